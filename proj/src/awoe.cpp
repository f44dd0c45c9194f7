#include "ppchurn/awoe.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ppchurn {

void AwoeConfig::validate() const {
    if (q < 1) throw DataError("aWOE q must be >= 1");
    if (unique_threshold < 1) throw DataError("aWOE unique_threshold must be >= 1");
    if (!(adjustment > 0.0)) throw DataError("aWOE adjustment must be > 0");
}

std::string to_string(BinMode m) {
    return m == BinMode::PerCategory ? "per-category" : "quantile";
}

BinMode bin_mode_from_string(const std::string& s) {
    if (s == "per-category") return BinMode::PerCategory;
    if (s == "quantile") return BinMode::Quantile;
    throw DataError("unknown bin mode: " + s);
}

std::pair<int, BinMode> plan_bins(long n_samples, long n_unique, const AwoeConfig& cfg) {
    if (n_samples < 1 || n_unique < 1) throw DataError("plan_bins needs positive counts");
    if (n_unique <= cfg.unique_threshold)
        return {static_cast<int>(n_unique), BinMode::PerCategory};
    long b = n_samples / cfg.q;
    b = std::clamp<long>(b, 2, n_unique);
    return {static_cast<int>(b), BinMode::Quantile};
}

double woe_of_bin(double churn_frac, double nonchurn_frac, double adjustment) {
    return std::log((churn_frac + adjustment) / (nonchurn_frac + adjustment));
}

int BinTable::bin_index(double value) const {
    if (mode == BinMode::Quantile) {
        // (lo, hi] intervals; out-of-range values clamp to the edge bins
        const auto it = std::lower_bound(edges.begin(), edges.end(), value);
        return static_cast<int>(it - edges.begin());
    }
    long lo = 0, hi = static_cast<long>(bins.size()) - 1;
    while (lo <= hi) {
        const long mid = (lo + hi) / 2;
        if (bins[mid].lower == value) return static_cast<int>(mid);
        if (bins[mid].lower < value) lo = mid + 1;
        else hi = mid - 1;
    }
    return -1;
}

double BinTable::woe_of(double value) const {
    const int i = bin_index(value);
    return i < 0 ? fallback_woe : bins[i].woe;
}

const BinTable& AwoeEncoder::table_for(const std::string& feature) const {
    for (const auto& t : tables)
        if (t.feature == feature) return t;
    throw DataError("no bin table for feature: " + feature);
}

namespace {

BinTable fit_feature(const std::string& name, const std::vector<double>& values,
                     const std::vector<int>& labels, long total_churn,
                     long total_nonchurn, const AwoeConfig& cfg, bool vanilla) {
    const long n = static_cast<long>(values.size());
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> uniq = sorted;
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    const long n_unique = static_cast<long>(uniq.size());

    BinTable table;
    table.feature = name;
    int b;
    if (vanilla) {
        b = static_cast<int>(n_unique);
        table.mode = BinMode::PerCategory;
    } else {
        const auto plan = plan_bins(n, n_unique, cfg);
        b = plan.first;
        table.mode = plan.second;
    }

    if (table.mode == BinMode::PerCategory) {
        table.bins.resize(uniq.size());
        for (std::size_t i = 0; i < uniq.size(); ++i)
            table.bins[i].lower = table.bins[i].upper = uniq[i];
    } else {
        // equal-frequency cut points; ties never straddle an edge, so a cut
        // landing inside a tie run slides to the run's end
        for (long k = 1; k < b; ++k) {
            long pos = std::lround(static_cast<double>(k) * static_cast<double>(n) /
                                   static_cast<double>(b));
            pos = std::clamp<long>(pos, 1, n - 1);
            while (pos < n && sorted[pos] == sorted[pos - 1]) ++pos;
            if (pos >= n) break;
            const double edge = 0.5 * (sorted[pos - 1] + sorted[pos]);
            if (table.edges.empty() || edge > table.edges.back())
                table.edges.push_back(edge);
        }
        table.bins.resize(table.edges.size() + 1);
        for (std::size_t i = 0; i < table.bins.size(); ++i) {
            table.bins[i].lower = i == 0 ? sorted.front() : table.edges[i - 1];
            table.bins[i].upper =
                i + 1 == table.bins.size() ? sorted.back() : table.edges[i];
        }
    }

    for (std::size_t i = 0; i < values.size(); ++i) {
        const int idx = table.bin_index(values[i]);
        if (idx < 0) throw DataError("training value fell outside its own bins");
        if (labels[i]) table.bins[idx].churn_count++;
        else table.bins[idx].nonchurn_count++;
    }
    for (auto& bin : table.bins) {
        const double cf = static_cast<double>(bin.churn_count) /
                          static_cast<double>(total_churn);
        const double nf = static_cast<double>(bin.nonchurn_count) /
                          static_cast<double>(total_nonchurn);
        bin.woe = woe_of_bin(cf, nf, cfg.adjustment);
    }
    table.fallback_woe = 0.0;
    return table;
}

AwoeEncoder fit_impl(const Dataset& train, const AwoeConfig& cfg, bool vanilla) {
    cfg.validate();
    if (train.n_rows() == 0) throw DataError("cannot fit aWOE on an empty dataset");
    const auto labels = train.labels();
    long churn = 0, nonchurn = 0;
    for (int y : labels) (y ? churn : nonchurn)++;
    if (churn == 0 || nonchurn == 0)
        throw DataError("single-class training set: aWOE needs both classes");

    AwoeEncoder enc;
    enc.fitted_schema = train.schema;
    enc.fitted_on = train.provenance;
    enc.config = cfg;
    enc.vanilla = vanilla;
    const int label = train.schema.label_index();
    for (std::size_t j = 0; j < train.n_cols(); ++j) {
        if (static_cast<int>(j) == label) continue;
        enc.tables.push_back(fit_feature(train.schema.columns[j].name, train.column(j),
                                         labels, churn, nonchurn, cfg, vanilla));
    }
    return enc;
}

}  // namespace

AwoeEncoder fit_awoe(const Dataset& train, const AwoeConfig& cfg) {
    return fit_impl(train, cfg, false);
}

AwoeEncoder fit_vanilla_woe(const Dataset& train, const AwoeConfig& cfg) {
    return fit_impl(train, cfg, true);
}

Dataset transform(const AwoeEncoder& enc, const Dataset& d) {
    if (!d.schema.same_features(enc.fitted_schema))
        throw SchemaError("dataset schema does not match the fitted encoder");
    const int label = d.schema.label_index();
    Dataset out;
    out.provenance = d.provenance;
    for (std::size_t j = 0; j < d.n_cols(); ++j) {
        Column c;
        c.name = d.schema.columns[j].name;
        c.kind = static_cast<int>(j) == label ? ColumnKind::Label : ColumnKind::Numeric;
        out.schema.columns.push_back(std::move(c));
    }
    out.rows.reserve(d.n_rows());
    for (const auto& row : d.rows) {
        std::vector<double> r(row.size());
        std::size_t t = 0;
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (static_cast<int>(j) == label) r[j] = row[j];
            else r[j] = enc.tables[t++].woe_of(row[j]);
        }
        out.rows.push_back(std::move(r));
    }
    return out;
}

std::string encoder_to_json(const AwoeEncoder& enc) {
    nlohmann::json js;
    js["vanilla"] = enc.vanilla;
    js["fitted_on"] = enc.fitted_on.to_string();
    js["config"] = {{"q", enc.config.q},
                    {"unique_threshold", enc.config.unique_threshold},
                    {"adjustment", enc.config.adjustment}};
    js["schema"] = nlohmann::json::array();
    for (const auto& c : enc.fitted_schema.columns) {
        nlohmann::json cj = {{"name", c.name}, {"kind", to_string(c.kind)}};
        if (c.kind == ColumnKind::Categorical) cj["categories"] = c.categories;
        js["schema"].push_back(cj);
    }
    js["tables"] = nlohmann::json::array();
    for (const auto& t : enc.tables) {
        nlohmann::json tj;
        tj["feature"] = t.feature;
        tj["mode"] = to_string(t.mode);
        tj["edges"] = t.edges;
        tj["fallback_woe"] = t.fallback_woe;
        tj["bins"] = nlohmann::json::array();
        for (const auto& b : t.bins)
            tj["bins"].push_back({{"lower", b.lower},
                                  {"upper", b.upper},
                                  {"woe", b.woe},
                                  {"churn", b.churn_count},
                                  {"nonchurn", b.nonchurn_count}});
        js["tables"].push_back(tj);
    }
    return js.dump(2) + "\n";
}

AwoeEncoder encoder_from_json(const std::string& text) {
    const auto js = nlohmann::json::parse(text);
    AwoeEncoder enc;
    enc.vanilla = js.at("vanilla").get<bool>();
    const std::string prov = js.at("fitted_on").get<std::string>();
    if (prov != "real") {
        enc.fitted_on.synthetic = true;
        enc.fitted_on.run_id = std::stoi(prov.substr(prov.find('(') + 1));
    }
    enc.config.q = js.at("config").at("q").get<int>();
    enc.config.unique_threshold = js.at("config").at("unique_threshold").get<int>();
    enc.config.adjustment = js.at("config").at("adjustment").get<double>();
    for (const auto& cj : js.at("schema")) {
        Column c;
        c.name = cj.at("name").get<std::string>();
        c.kind = column_kind_from_string(cj.at("kind").get<std::string>());
        if (cj.contains("categories"))
            c.categories = cj.at("categories").get<std::vector<std::string>>();
        enc.fitted_schema.columns.push_back(std::move(c));
    }
    for (const auto& tj : js.at("tables")) {
        BinTable t;
        t.feature = tj.at("feature").get<std::string>();
        t.mode = bin_mode_from_string(tj.at("mode").get<std::string>());
        t.edges = tj.at("edges").get<std::vector<double>>();
        t.fallback_woe = tj.at("fallback_woe").get<double>();
        for (const auto& bj : tj.at("bins")) {
            Bin b;
            b.lower = bj.at("lower").get<double>();
            b.upper = bj.at("upper").get<double>();
            b.woe = bj.at("woe").get<double>();
            b.churn_count = bj.at("churn").get<long>();
            b.nonchurn_count = bj.at("nonchurn").get<long>();
            t.bins.push_back(b);
        }
        enc.tables.push_back(std::move(t));
    }
    return enc;
}

void save_encoder(const AwoeEncoder& enc, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write encoder file: " + path);
    out << encoder_to_json(enc);
}

AwoeEncoder load_encoder(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open encoder file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return encoder_from_json(ss.str());
}

}  // namespace ppchurn
