#pragma once

// Stabilizer group elements as printed in the reference tables, indexed S_1..S_{2^n-1}.

#include <string>
#include <utility>
#include <vector>

namespace tables {

struct PrintedElement {
    std::size_t index;
    std::vector<std::pair<double, std::string>> terms;
};

struct PrintedTable {
    std::string state;
    std::size_t n;
    std::vector<PrintedElement> elements;
};

inline std::vector<PrintedTable> printed_tables() {
    return {
        {"ghz3", 3, {
            {1, {{1.0, "XXX"}}},
            {2, {{1.0, "ZZI"}}},
            {3, {{1.0, "IZZ"}}},
            {4, {{-1.0, "YYX"}}},
            {5, {{-1.0, "XYY"}}},
            {6, {{1.0, "ZIZ"}}},
            {7, {{-1.0, "YXY"}}},
        }},
        {"ghz4", 4, {
            {1, {{1.0, "XXXX"}}},
            {2, {{1.0, "ZZII"}}},
            {3, {{1.0, "IZZI"}}},
            {4, {{1.0, "IIZZ"}}},
            {5, {{-1.0, "YYXX"}}},
            {6, {{-1.0, "XYYX"}}},
            {7, {{-1.0, "XXYY"}}},
            {8, {{1.0, "ZIZI"}}},
            {9, {{1.0, "ZZZZ"}}},
            {10, {{1.0, "IZIZ"}}},
            {11, {{-1.0, "YXYX"}}},
            {12, {{1.0, "YYYY"}}},
            {13, {{-1.0, "XYXY"}}},
            {14, {{1.0, "ZIIZ"}}},
            {15, {{-1.0, "YXXY"}}},
        }},
        {"c4", 4, {
            {1, {{1.0, "ZZII"}}},
            {2, {{1.0, "XXZI"}}},
            {3, {{1.0, "IZXX"}}},
            {4, {{1.0, "IIZZ"}}},
            {5, {{-1.0, "YYZI"}}},
            {6, {{1.0, "ZIXX"}}},
            {7, {{1.0, "ZZZZ"}}},
            {8, {{1.0, "XYYX"}}},
            {9, {{1.0, "XXIZ"}}},
            {10, {{-1.0, "IZYY"}}},
            {11, {{1.0, "YXYX"}}},
            {12, {{-1.0, "YYIZ"}}},
            {13, {{-1.0, "ZIYY"}}},
            {14, {{1.0, "XYXY"}}},
            {15, {{1.0, "YXXY"}}},
        }},
        {"w3", 3, {
            {1, {{1.0 / 3, "ZII"}, {2.0 / 3, "YYZ"}, {2.0 / 3, "XZX"}}},
            {2, {{1.0 / 3, "IZI"}, {2.0 / 3, "ZYY"}, {2.0 / 3, "XXZ"}}},
            {3, {{1.0 / 3, "IIZ"}, {2.0 / 3, "YZY"}, {2.0 / 3, "ZXX"}}},
            {4, {{2.0 / 3, "XIX"}, {2.0 / 3, "IYY"}, {-1.0 / 3, "ZZI"}}},
            {5, {{2.0 / 3, "IXX"}, {2.0 / 3, "YYI"}, {-1.0 / 3, "ZIZ"}}},
            {6, {{2.0 / 3, "XXI"}, {2.0 / 3, "YIY"}, {-1.0 / 3, "IZZ"}}},
            {7, {{-1.0, "ZZZ"}}},
        }},
        {"w4", 4, {
            {1, {{0.5, "YZZY"}, {0.5, "IYZY"}, {0.5, "IIYY"}, {0.5, "IIIZ"}}},
            {2, {{0.5, "YZYI"}, {0.5, "IYYI"}, {0.5, "IIZI"}, {0.5, "IIXX"}}},
            {3, {{0.5, "YYII"}, {0.5, "IZII"}, {0.5, "IXZX"}, {0.5, "IXXI"}}},
            {4, {{0.5, "ZIII"}, {0.5, "XZZX"}, {0.5, "XZXI"}, {0.5, "XXII"}}},
            {5, {{0.5, "YZYZ"}, {0.5, "YZIY"}, {0.5, "IYYZ"}, {0.5, "IYIY"}}},
            {6, {{0.5, "YYIZ"}, {0.5, "YIZY"}, {0.5, "IZYY"}, {0.5, "IXXZ"}}},
            {7, {{0.5, "ZYZY"}, {0.5, "ZIYY"}, {0.5, "XZXZ"}, {0.5, "XXIZ"}}},
            {8, {{0.5, "YYZI"}, {0.5, "YIYI"}, {0.5, "IZXX"}, {0.5, "IXIX"}}},
            {9, {{0.5, "ZYYI"}, {0.5, "ZIXX"}, {0.5, "XZIX"}, {0.5, "XXZI"}}},
            {10, {{0.5, "ZXZX"}, {0.5, "ZXXI"}, {0.5, "XIZX"}, {0.5, "XIXI"}}},
            {11, {{0.5, "YYZZ"}, {0.5, "YIYZ"}, {0.5, "YIIY"}, {-0.5, "IZZZ"}}},
            {12, {{0.5, "ZYYZ"}, {0.5, "ZYIY"}, {-0.5, "ZIZZ"}, {0.5, "XXZZ"}}},
            {13, {{0.5, "ZZYY"}, {-0.5, "ZZIZ"}, {0.5, "ZXXZ"}, {0.5, "XIXZ"}}},
            {14, {{-0.5, "ZZZI"}, {0.5, "ZZXX"}, {0.5, "ZXIZ"}, {0.5, "XIIX"}}},
            {15, {{-1.0, "ZZZZ"}}},
        }},
    };
}

}  // namespace tables
