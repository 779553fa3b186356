#include <gtest/gtest.h>

#include <cstring>
#include <sstream>

#include "oplab/io.hpp"

using namespace oplab;
using io::json;

TEST(Io, FormatDouble) {
    EXPECT_EQ(io::format_double(0.5), "0.5");
    EXPECT_EQ(io::format_double(0.1), "0.10000000000000001");
    EXPECT_EQ(io::format_double(1.0 / 0.0), "inf");
    EXPECT_EQ(io::number_to_json(1.0 / 0.0), json(nullptr));
}

TEST(Io, MapRoundTripAndNormalization) {
    const auto phi = io::map_from_json(json::parse(R"({"a":[1,0],"b":[0,0],"c":[-1,0],"d":[2,0]})"));
    EXPECT_EQ(phi.a(), complex(0.5));
    EXPECT_EQ(phi.c(), complex(-0.5));
    const auto back = io::map_from_json(io::map_to_json(phi));
    EXPECT_TRUE(approx_equal(phi, back, 0.0));

    const auto defaults = io::map_from_json(json::parse(R"({"a":0.5,"b":[0.25,0.1]})"));
    EXPECT_EQ(defaults.c(), complex{});
    EXPECT_EQ(defaults.b(), complex(0.25, 0.1));
}

TEST(Io, MapValidation) {
    EXPECT_THROW(io::map_from_json(json::parse("[1,2]")), invalid_argument);
    EXPECT_THROW(io::map_from_json(json::parse(R"({"a":1})")), invalid_argument);
    EXPECT_THROW(io::map_from_json(json::parse(R"({"a":1,"b":0,"e":3})")), invalid_argument);
    EXPECT_THROW(io::map_from_json(json::parse(R"({"a":[1,2,3],"b":0})")), invalid_argument);
    EXPECT_THROW(io::map_from_json(json::parse(R"({"a":1,"b":0,"d":0})")), invalid_argument);
    EXPECT_THROW(io::parse_json("{", "map"), invalid_argument);
}

TEST(Io, Coefficients) {
    const auto plain = io::coefficients_from_json(json::parse("[0, [0.5, 0.25], 0.125]"));
    EXPECT_EQ(plain.coeffs, (CoefficientVector{0.0, complex(0.5, 0.25), 0.125}));
    EXPECT_EQ(plain.radius, 1.0);
    const auto wrapped = io::coefficients_from_json(json::parse(R"({"coeffs":[0,0.5],"radius":0.9})"));
    EXPECT_EQ(wrapped.coeffs.size(), 2u);
    EXPECT_EQ(wrapped.radius, 0.9);
    EXPECT_THROW(io::coefficients_from_json(json::parse("[]")), invalid_argument);
    EXPECT_THROW(io::coefficients_from_json(json::parse(R"({"c":[1]})")), invalid_argument);
}

TEST(Io, ScanCsv) {
    const std::vector<ScanRow> rows{{complex(0.5, 0.25), 0.1, 0.2, 0.3, 0.4, 0.5}};
    std::ostringstream os;
    io::write_scan_csv(os, rows);
    EXPECT_EQ(os.str(),
              "w_re,w_im,rho,T_phi,T_psi,Q,kernel_diff\r\n"
              "0.5,0.25,0.10000000000000001,0.20000000000000001,0.29999999999999999,0.40000000000000002,0.5\r\n");
    const std::vector<double> bound{0.5};
    std::ostringstream with_bound;
    io::write_scan_csv(with_bound, rows, std::span<const double>(bound));
    EXPECT_NE(with_bound.str().find("kernel_diff,bound\r\n"), std::string::npos);
    const auto j = io::scan_to_json(rows, std::span<const double>(bound));
    EXPECT_EQ(j[0]["bound"], 0.5);
    EXPECT_EQ(j[0]["w_im"], 0.25);
    const std::vector<double> wrong{0.1, 0.2};
    EXPECT_THROW(io::write_scan_csv(os, rows, std::span<const double>(wrong)), invalid_argument);
}

TEST(Io, CsvQuoting) {
    EXPECT_EQ(io::csv_field("plain"), "plain");
    EXPECT_EQ(io::csv_field("a,b"), "\"a,b\"");
    EXPECT_EQ(io::csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
}

TEST(Io, MatrixDumps) {
    Matrix m(2, 2);
    m << complex(1, 2), complex(3, 4), complex(5, 6), complex(7, 8);
    std::ostringstream csv;
    io::write_matrix_csv(csv, m);
    EXPECT_EQ(csv.str(), "1,2,3,4\r\n5,6,7,8\r\n");
    std::ostringstream bin;
    io::write_matrix_binary(bin, m);
    const std::string raw = bin.str();
    ASSERT_EQ(raw.size(), 8 * sizeof(double));
    double values[8];
    std::memcpy(values, raw.data(), raw.size());
    for (int i = 0; i < 8; ++i) {
        EXPECT_EQ(values[i], i + 1.0);
    }
}
