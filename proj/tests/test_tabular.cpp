#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <set>

#include "ppchurn/csv.hpp"
#include "ppchurn/preprocess.hpp"
#include "ppchurn/simulate.hpp"
#include "ppchurn/split.hpp"
#include "ppchurn/stats.hpp"

using namespace ppchurn;

namespace {

RawTable table(std::vector<std::string> header,
               std::vector<std::vector<std::string>> cells) {
    RawTable t;
    t.header = std::move(header);
    t.cells = std::move(cells);
    return t;
}

}  // namespace

TEST_CASE("infer_schema kinds") {
    const RawTable t = table({"a", "b", "c", "y"}, {{"12.5", "yes", "1", "yes"},
                                                    {"3", "no", "a", "no"},
                                                    {"4", "yes", "1", "no"}});
    const Schema s = infer_schema(t, "y");
    CHECK(s.columns[0].kind == ColumnKind::Numeric);
    CHECK(s.columns[1].kind == ColumnKind::Categorical);
    CHECK(s.columns[1].categories.size() == 2);
    CHECK(s.columns[2].kind == ColumnKind::Categorical);  // mixed "1","a"
    CHECK(s.columns[3].kind == ColumnKind::Label);
}

TEST_CASE("infer_schema errors") {
    CHECK_THROWS_AS(infer_schema(table({"a"}, {}), "a"), DataError);
    CHECK_THROWS_AS(infer_schema(table({"a", "a"}, {{"1", "2"}}), "a"), DataError);
    CHECK_THROWS_AS(infer_schema(table({"a"}, {{"1"}}), "missing"), DataError);
}

TEST_CASE("preprocess encodings") {
    const RawTable t = table({"id", "n", "c", "yn", "y"},
                             {{"r1", "1.5", "red", "yes", "yes"},
                              {"r2", "", "", "no", "no"},
                              {"r3", "2.5", "blue", "yes", "no"}});
    PreprocessConfig cfg;
    cfg.drop_columns = {"id"};
    const Dataset d = preprocess(t, "y", cfg);
    const int n = d.schema.column_index("n");
    const int c = d.schema.column_index("c");
    const int yn = d.schema.column_index("yn");
    REQUIRE(n >= 0);
    REQUIRE(c >= 0);
    REQUIRE(yn >= 0);
    CHECK(d.schema.column_index("id") == -1);
    CHECK(d.rows[1][n] == 0.0);  // missing numeric -> fill
    CHECK(d.rows[0][yn] == 1.0);
    CHECK(d.rows[1][yn] == 0.0);
    // missing categorical becomes its own category
    const Column& cc = d.schema.columns[c];
    CHECK(cc.code_of("MISSING") == static_cast<int>(d.rows[1][c]));
    // first-appearance coding: red=0, MISSING=1, blue=2
    CHECK(d.rows[0][c] == 0.0);
    CHECK(d.rows[2][c] == 2.0);
    CHECK(d.labels() == std::vector<int>{1, 0, 0});
}

TEST_CASE("preprocess removes redundant columns") {
    const RawTable t = table({"a", "dup", "const", "y"}, {{"1", "1", "5", "yes"},
                                                          {"2", "2", "5", "no"},
                                                          {"3", "3", "5", "yes"}});
    const Dataset d = preprocess(t, "y", {});
    CHECK(d.schema.column_index("a") >= 0);
    CHECK(d.schema.column_index("dup") == -1);
    CHECK(d.schema.column_index("const") == -1);
}

TEST_CASE("preprocess is idempotent") {
    const RawTable t = simulate_telco(300, 5);
    PreprocessConfig cfg;
    cfg.drop_columns = {"customerID"};
    const Dataset once = preprocess(t, "Churn", cfg);
    const Dataset twice = preprocess(once, cfg);
    CHECK(twice.schema.n_columns() == once.schema.n_columns());
    CHECK(twice.rows == once.rows);
}

TEST_CASE("label encoding is a bijection per column") {
    const RawTable t = simulate_telco(400, 9);
    PreprocessConfig cfg;
    cfg.drop_columns = {"customerID"};
    const Dataset d = preprocess(t, "Churn", cfg);
    for (std::size_t j = 0; j < d.n_cols(); ++j) {
        const Column& col = d.schema.columns[j];
        if (col.kind != ColumnKind::Categorical) continue;
        std::set<int> seen;
        for (const auto& r : d.rows) seen.insert(static_cast<int>(r[j]));
        for (int code : seen) {
            CHECK(code >= 0);
            CHECK(code < static_cast<int>(col.categories.size()));
        }
        // every declared category was observed (codes 0..k-1 all used)
        CHECK(seen.size() == col.categories.size());
    }
}

TEST_CASE("split 5/5 at 0.7 gives 7 train rows") {
    Dataset d;
    d.schema.columns = {{"x", ColumnKind::Numeric, {}}, {"y", ColumnKind::Label, {}}};
    for (int i = 0; i < 10; ++i)
        d.rows.push_back({static_cast<double>(i), i < 5 ? 1.0 : 0.0});
    const auto [train, test] = split_train_test(d, 0.7, 3);
    CHECK(train.n_rows() == 7);
    CHECK(test.n_rows() == 3);
    int pos = 0;
    for (int y : train.labels()) pos += y;
    CHECK((pos == 3 || pos == 4));
}

TEST_CASE("split 2/2 at 0.5 balances classes") {
    Dataset d;
    d.schema.columns = {{"x", ColumnKind::Numeric, {}}, {"y", ColumnKind::Label, {}}};
    d.rows = {{0, 1}, {1, 1}, {2, 0}, {3, 0}};
    const auto [train, test] = split_train_test(d, 0.5, 1);
    CHECK(train.n_rows() == 2);
    CHECK(test.n_rows() == 2);
    CHECK(train.labels()[0] + train.labels()[1] == 1);
    CHECK(test.labels()[0] + test.labels()[1] == 1);
}

TEST_CASE("split is a deterministic partition within 1 row per class") {
    const RawTable raw = simulate_telco(500, 21);
    PreprocessConfig cfg;
    cfg.drop_columns = {"customerID"};
    const Dataset d = preprocess(raw, "Churn", cfg);
    const auto [a_train, a_test] = split_train_test(d, 0.7, 17);
    const auto [b_train, b_test] = split_train_test(d, 0.7, 17);
    CHECK(a_train.rows == b_train.rows);
    CHECK(a_test.rows == b_test.rows);
    CHECK(a_train.n_rows() + a_test.n_rows() == d.n_rows());

    std::set<std::vector<double>> train_set(a_train.rows.begin(), a_train.rows.end());
    for (const auto& r : a_test.rows) CHECK(train_set.count(r) == 0);

    long class_total[2] = {0, 0}, class_train[2] = {0, 0};
    for (int y : d.labels()) class_total[y]++;
    for (int y : a_train.labels()) class_train[y]++;
    for (int c = 0; c < 2; ++c)
        CHECK(std::abs(class_train[c] - 0.7 * class_total[c]) <= 1.0);
}

TEST_CASE("split errors") {
    Dataset d;
    d.schema.columns = {{"x", ColumnKind::Numeric, {}}, {"y", ColumnKind::Label, {}}};
    d.rows = {{0, 1}, {1, 0}, {2, 0}};
    CHECK_THROWS_AS(split_train_test(d, 0.7, 1), DataError);  // class with 1 row
    d.rows.push_back({3, 1});
    CHECK_THROWS_AS(split_train_test(d, 0.0, 1), DataError);
    CHECK_THROWS_AS(split_train_test(d, 1.0, 1), DataError);
}

TEST_CASE("column_skewness") {
    CHECK(column_skewness({1, 2, 3}) == doctest::Approx(0.0).epsilon(1e-12));
    // m3 = 0.09375, m2 = 0.1875 -> 2/sqrt(3)
    CHECK(column_skewness({0, 0, 0, 1}) == doctest::Approx(1.1547005384).epsilon(1e-9));
    CHECK_THROWS_AS(column_skewness({1, 1, 1}), UndefinedSkewError);
    CHECK_THROWS_AS(column_skewness({1, 2}), DataError);
    // antisymmetry under reflection
    const std::vector<double> v = {0.3, 1.7, 2.2, 9.1, 4.4};
    std::vector<double> w;
    for (double x : v) w.push_back(-x + 5.0);
    CHECK(column_skewness(v) == doctest::Approx(-column_skewness(w)).epsilon(1e-12));
}

TEST_CASE("csv quoting round trip") {
    RawTable t = table({"a", "b"}, {{"plain", "with,comma"},
                                    {"with \"quote\"", "line\nbreak"},
                                    {"", "trailing"}});
    const std::string path = (std::filesystem::temp_directory_path() /
                              "ppchurn_csv_test.csv").string();
    write_raw_csv(t, path);
    const RawTable back = read_raw_csv(path);
    CHECK(back.header == t.header);
    CHECK(back.cells == t.cells);
    std::filesystem::remove(path);
}

TEST_CASE("dataset save/load round trip") {
    const RawTable raw = simulate_telco(120, 8);
    PreprocessConfig cfg;
    cfg.drop_columns = {"customerID"};
    Dataset d = preprocess(raw, "Churn", cfg);
    d.provenance = Provenance::synthetic_run(3);
    const auto dir = std::filesystem::temp_directory_path();
    const std::string csv = (dir / "ppchurn_ds.csv").string();
    const std::string schema = (dir / "ppchurn_ds.schema.json").string();
    save_dataset(d, csv, schema, 42);
    const Dataset back = load_dataset(csv, schema);
    CHECK(back.schema.same_features(d.schema));
    CHECK(back.provenance == d.provenance);
    REQUIRE(back.n_rows() == d.n_rows());
    for (std::size_t i = 0; i < d.n_rows(); ++i)
        for (std::size_t j = 0; j < d.n_cols(); ++j)
            CHECK(back.rows[i][j] == doctest::Approx(d.rows[i][j]).epsilon(1e-15));
    std::filesystem::remove(csv);
    std::filesystem::remove(schema);
}
