#include "mulab/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mulab/anatomy.hpp"
#include "mulab/bigint.hpp"
#include "mulab/errors.hpp"
#include "mulab/format.hpp"
#include "mulab/formulas.hpp"
#include "mulab/mu.hpp"
#include "mulab/parallel.hpp"
#include "mulab/random_models.hpp"
#include "mulab/rooted_tree.hpp"
#include "mulab/subtree_count.hpp"

namespace mulab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

long long parse_ll(const std::string& s, const std::string& what) {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw ParseError("bad integer for " + what + ": '" + s + "'");
    return v;
}

uint64_t parse_u64(const std::string& s, const std::string& what) {
    uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw ParseError("bad unsigned integer for " + what + ": '" + s + "'");
    return v;
}

double parse_num(const std::string& s, const std::string& what) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw ParseError("bad number for " + what + ": '" + s + "'");
    return v;
}

std::vector<double> parse_grid(const std::string& csv, const std::string& what) {
    std::vector<double> out;
    size_t pos = 0;
    while (true) {
        size_t comma = csv.find(',', pos);
        std::string tok =
            trim(comma == std::string::npos ? csv.substr(pos) : csv.substr(pos, comma - pos));
        if (tok.empty()) throw ParseError("empty entry in " + what);
        out.push_back(parse_num(tok, what));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

double mean_of(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    double s = 0.0;
    for (double x : v) s += x;
    return s / double(v.size());
}

double median_of(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

double stderr_of(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    double m = mean_of(v), s2 = 0.0;
    for (double x : v) s2 += (x - m) * (x - m);
    s2 /= double(v.size() - 1);
    return std::sqrt(s2 / double(v.size()));
}

double min_of(const std::vector<double>& v) {
    double m = kInf;
    for (double x : v) m = std::min(m, x);
    return m;
}

double max_of(const std::vector<double>& v) {
    double m = -kInf;
    for (double x : v) m = std::max(m, x);
    return m;
}

std::vector<double> column_values(const ExperimentResult& res, size_t col) {
    std::vector<double> out;
    for (const ExperimentRow& row : res.rows)
        if (!row.failed && col < row.values.size()) out.push_back(row.values[col]);
    return out;
}

// Runs body(i, row) for every row slot, catching per-row exceptions into
// failed rows. Slots are written by index and aggregated sequentially by
// the caller, so results never depend on the worker count.
template <typename Body>
void fill_rows(ExperimentResult& res, int rows, int workers, Body&& body) {
    res.rows.assign(size_t(rows), ExperimentRow{});
    parallel_for_index(rows, workers, [&](int i) {
        ExperimentRow row;
        row.replica = i;
        try {
            body(i, row);
        } catch (const std::exception& e) {
            row.failed = true;
            row.error = e.what();
            row.values.clear();
        }
        res.rows[size_t(i)] = std::move(row);
    });
}

void add_verdict(ExperimentResult& res, const std::string& name, bool ok) {
    res.verdicts.emplace_back(name, ok ? "pass" : "fail");
}

double tag_value(const std::vector<std::pair<std::string, double>>& bounds,
                 const std::string& tag, double fallback) {
    for (const auto& [t, v] : bounds)
        if (t == tag) return v;
    return fallback;
}

std::string hex16(uint64_t x) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
    return buf;
}

std::string sanitize_error(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (c == ',') out += ';';
        else if (c == '\n') out += ' ';
        else if (c != '\r') out += c;
    }
    return out;
}

}  // namespace

double ExperimentSpec::resolve_p() const {
    std::string e;
    for (char c : p_expr)
        if (c != ' ' && c != '\t') e += c;
    if (e.empty()) throw ParseError("p expression is empty");
    if (n <= 0) throw DomainError("p expression needs n >= 1");
    auto has_suffix = [&](const std::string& tail) {
        return e.size() > tail.size() &&
               e.compare(e.size() - tail.size(), tail.size(), tail) == 0;
    };
    double value = 0.0;
    if (e == "ln(n)/n") {
        value = std::log(double(n)) / n;
    } else if (has_suffix("*ln(n)/n")) {
        value = parse_num(e.substr(0, e.size() - 8), "p") * std::log(double(n)) / n;
    } else if (has_suffix("/n")) {
        value = parse_num(e.substr(0, e.size() - 2), "p") / n;
    } else {
        value = parse_num(e, "p");
    }
    if (!(value >= 0.0 && value <= 1.0))
        throw DomainError("p = " + fixed_double(value) + " falls outside [0, 1]");
    return value;
}

double ExperimentSpec::option_or(const std::string& key, double fallback) const {
    auto it = options.find(key);
    return it == options.end() ? fallback : parse_num(it->second, key);
}

std::string ExperimentSpec::option_or(const std::string& key,
                                      const std::string& fallback) const {
    auto it = options.find(key);
    return it == options.end() ? fallback : it->second;
}

ExperimentSpec ExperimentSpec::parse_text(const std::string& text) {
    ExperimentSpec spec;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t hash_pos = line.find('#');
        if (hash_pos != std::string::npos) line.resize(hash_pos);
        line = trim(line);
        if (line.empty()) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("line " + std::to_string(lineno) + ": expected key=value, got '" +
                             line + "'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ParseError("line " + std::to_string(lineno) + ": empty key");
        if (key == "name") spec.name = value;
        else if (key == "n") spec.n = int(parse_ll(value, key));
        else if (key == "d") spec.d = int(parse_ll(value, key));
        else if (key == "replicas") spec.replicas = int(parse_ll(value, key));
        else if (key == "workers") spec.workers = int(parse_ll(value, key));
        else if (key == "seed") spec.seed.value = parse_u64(value, key);
        else if (key == "stream") spec.seed.stream = parse_u64(value, key);
        else if (key == "p") spec.p_expr = value;
        else spec.options[key] = value;
    }
    if (spec.n < 0) throw ParseError("n must be >= 0");
    if (spec.d < 0) throw ParseError("d must be >= 0");
    if (spec.replicas < 1) throw ParseError("replicas must be >= 1");
    if (spec.workers < 1) throw ParseError("workers must be >= 1");
    return spec;
}

std::string ExperimentSpec::canonical_text() const {
    std::string out;
    out += "name=" + name + "\n";
    out += "n=" + std::to_string(n) + "\n";
    out += "d=" + std::to_string(d) + "\n";
    out += "p=" + p_expr + "\n";
    out += "replicas=" + std::to_string(replicas) + "\n";
    out += "seed=" + std::to_string(seed.value) + "\n";
    out += "stream=" + std::to_string(seed.stream) + "\n";
    for (const auto& [k, v] : options) out += k + "=" + v + "\n";
    return out;
}

uint64_t ExperimentSpec::hash() const {
    uint64_t h = 14695981039346656037ull;
    for (unsigned char c : canonical_text()) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

int ExperimentResult::failures() const {
    int k = 0;
    for (const ExperimentRow& row : rows) k += row.failed ? 1 : 0;
    return k;
}

bool ExperimentResult::passed() const {
    for (const auto& [name, state] : verdicts)
        if (state == "fail") return false;
    return true;
}

double ExperimentResult::summary_value(const std::string& key) const {
    for (const auto& [k, v] : summary)
        if (k == key) return v;
    throw DomainError("no summary entry named '" + key + "'");
}

std::string result_to_csv(const ExperimentResult& r) {
    std::string out;
    out += "# name=" + r.spec.name + ";spec_hash=" + hex16(r.spec.hash()) +
           ";seed=" + std::to_string(r.spec.seed.value) +
           ";stream=" + std::to_string(r.spec.seed.stream) + "\n";
    out += "replica,failed";
    for (const std::string& col : r.columns) out += "," + col;
    out += ",error\n";
    for (const ExperimentRow& row : r.rows) {
        out += std::to_string(row.replica);
        out += row.failed ? ",1" : ",0";
        for (size_t c = 0; c < r.columns.size(); ++c) {
            out += ',';
            if (c < row.values.size()) out += fixed_double(row.values[c]);
        }
        out += ',' + sanitize_error(row.error) + "\n";
    }
    if (!r.summary.empty()) {
        out += "# summary:";
        bool first = true;
        for (const auto& [k, v] : r.summary) {
            if (!first) out += ';';
            first = false;
            out += k + "=" + fixed_double(v);
        }
        out += "\n";
    }
    if (!r.verdicts.empty()) {
        out += "# verdict:";
        bool first = true;
        for (const auto& [k, v] : r.verdicts) {
            if (!first) out += ';';
            first = false;
            out += k + "=" + v;
        }
        out += "\n";
    }
    return out;
}

std::string result_to_json(const ExperimentResult& r) {
    nlohmann::ordered_json j;
    j["name"] = r.spec.name;
    j["spec_hash"] = hex16(r.spec.hash());
    nlohmann::ordered_json spec;
    spec["name"] = r.spec.name;
    spec["n"] = r.spec.n;
    spec["d"] = r.spec.d;
    spec["p"] = r.spec.p_expr;
    spec["replicas"] = r.spec.replicas;
    spec["seed"] = r.spec.seed.value;
    spec["stream"] = r.spec.seed.stream;
    nlohmann::ordered_json opts = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.spec.options) opts[k] = v;
    spec["options"] = opts;
    j["spec"] = spec;
    j["columns"] = r.columns;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const ExperimentRow& row : r.rows) {
        nlohmann::ordered_json jr;
        jr["replica"] = row.replica;
        jr["failed"] = row.failed;
        nlohmann::ordered_json vals = nlohmann::ordered_json::object();
        for (size_t c = 0; c < r.columns.size() && c < row.values.size(); ++c)
            vals[r.columns[c]] = row.values[c];
        jr["values"] = vals;
        if (row.failed) jr["error"] = row.error;
        rows.push_back(jr);
    }
    j["rows"] = rows;
    j["failures"] = r.failures();
    nlohmann::ordered_json summary = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.summary) summary[k] = v;
    j["summary"] = summary;
    nlohmann::ordered_json verdicts = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.verdicts) verdicts[k] = v;
    j["verdicts"] = verdicts;
    j["pass"] = r.passed();
    return j.dump(2) + "\n";
}

ExperimentResult run_xi_experiment(const ExperimentSpec& spec) {
    ExperimentResult res;
    res.spec = spec;
    if (res.spec.name.empty()) res.spec.name = "xi";
    const int n = spec.n;
    if (n < 2) throw DomainError("xi experiment needs n >= 2");
    const double p = spec.resolve_p();
    const auto window = degree_window(n, p);
    res.columns = {"xi_max", "normalized", "deg_x", "deg_y", "degs_in_window"};
    // replicas run one at a time; the worker budget goes to the pair scan
    // inside xi_stats, whose merge is order independent
    fill_rows(res, spec.replicas, 1, [&](int i, ExperimentRow& row) {
        Graph g = sample_gnp(n, p, spec.seed.sub(uint64_t(i)));
        XiStats st = xi_stats(g, p, spec.workers);
        double normalized = st.beta > 0 ? (st.xi_max - st.alpha) / st.beta : 0.0;
        int dx = g.degree(st.argmax_pair.first);
        int dy = g.degree(st.argmax_pair.second);
        bool in_window = dx >= window.first && dx <= window.second && dy >= window.first &&
                         dy <= window.second;
        row.values = {double(st.xi_max), normalized, double(dx), double(dy),
                      in_window ? 1.0 : 0.0};
    });
    auto normalized = column_values(res, 1);
    double med = median_of(normalized);
    res.summary = {
        {"median_normalized", med},
        {"mean_normalized", mean_of(normalized)},
        {"mean_xi_max", mean_of(column_values(res, 0))},
        {"fraction_degs_in_window", mean_of(column_values(res, 4))},
        {"alpha", xi_alpha(n, p)},
        {"beta", xi_beta(n, p)},
    };
    const double lo = spec.option_or("xi_lo", 0.5);
    const double hi = spec.option_or("xi_hi", 1.3);
    add_verdict(res, "normalized-location",
                res.failures() == 0 && !normalized.empty() && med >= lo && med <= hi);
    return res;
}

ExperimentResult run_second_order_sweep(const ExperimentSpec& spec) {
    ExperimentResult res;
    res.spec = spec;
    if (res.spec.name.empty()) res.spec.name = "second-order";
    const int n_min = int(spec.option_or("n_min", 12.0));
    const int n_max = int(spec.option_or("n_max", 16.0));
    const int n_step = int(spec.option_or("n_step", 2.0));
    if (n_min < 4 || n_max < n_min || n_step < 1)
        throw DomainError("second-order sweep needs 4 <= n_min <= n_max and n_step >= 1");
    if (n_max > kMuExactCap)
        throw DomainError("n_max exceeds the exact engine cap of " +
                          std::to_string(kMuExactCap));
    auto p_grid = parse_grid(spec.option_or("p_grid", std::string("0.2,0.35,0.5")), "p_grid");
    for (double p : p_grid)
        if (!(p > 0.0 && p < 1.0)) throw DomainError("p_grid entries must lie inside (0, 1)");
    std::vector<int> ns;
    for (int n = n_min; n <= n_max; n += n_step) ns.push_back(n);
    const int points = int(p_grid.size());
    const int cells = int(ns.size()) * points;
    const int total = cells * spec.replicas;
    res.columns = {"n", "p", "xi_max", "alpha", "beta", "mu_log2", "gap_log2", "margin"};
    // rows run one at a time; the exact engine splits its subset range
    // across the workers internally
    fill_rows(res, total, 1, [&](int idx, ExperimentRow& row) {
        const int cell = idx / spec.replicas;
        const int n = ns[size_t(cell / points)];
        const double p = p_grid[size_t(cell % points)];
        Graph g = sample_gnp(n, p, spec.seed.sub(uint64_t(idx)));
        MuReport mu = mu_exact(g, spec.workers);
        XiStats st = xi_stats(g, p, 1);
        BigInt gap = (BigInt(1) << n) - *mu.exact;
        if (gap == 0) throw DomainError("mu reached 2^n, no repeated type at all");
        double gap_log2 = log2_big(gap);
        // swapping the argmax pair inside any subset of their xi_max common
        // vertices pairs off 2^xi_max subsets with isomorphic partners, so
        // the margin below must come out nonnegative every time
        row.values = {double(n),  p,        double(st.xi_max),      st.alpha,
                      st.beta,    log2_big(*mu.exact), gap_log2,
                      gap_log2 - double(st.xi_max)};
    });
    auto margins = column_values(res, 7);
    for (int cell = 0; cell < cells; ++cell) {
        std::vector<double> cell_margin;
        for (int r = 0; r < spec.replicas; ++r) {
            const ExperimentRow& row = res.rows[size_t(cell * spec.replicas + r)];
            if (!row.failed) cell_margin.push_back(row.values[7]);
        }
        const std::string tag = std::to_string(cell);
        res.summary.emplace_back("cell" + tag + "_n", double(ns[size_t(cell / points)]));
        res.summary.emplace_back("cell" + tag + "_p", p_grid[size_t(cell % points)]);
        res.summary.emplace_back("cell" + tag + "_min_margin", min_of(cell_margin));
    }
    res.summary.emplace_back("min_margin", min_of(margins));
    add_verdict(res, "pair-floor",
                res.failures() == 0 && !margins.empty() && min_of(margins) >= -1e-9);
    return res;
}

ExperimentResult run_uniqueness_experiment(const ExperimentSpec& spec) {
    ExperimentResult res;
    res.spec = spec;
    if (res.spec.name.empty()) res.spec.name = "uniqueness";
    const int n = spec.n;
    if (n < 4) throw DomainError("uniqueness experiment needs n >= 4");
    const double p = spec.resolve_p();
    const auto window = typical_subset_window(n);
    const double floor = spec.option_or("uniqueness_floor", 0.9);
    const int max_attempts = int(spec.option_or("subset_attempts", 1000.0));
    const double ln_n = std::log(double(n));
    res.columns = {"subset_size", "eta", "eta_prime", "expected_eta_prime", "both_ok"};
    fill_rows(res, spec.replicas, spec.workers, [&](int i, ExperimentRow& row) {
        Graph g = sample_gnp(n, p, spec.seed.sub(2 * uint64_t(i)));
        Seed su = spec.seed.sub(2 * uint64_t(i) + 1);
        VertexSet u;
        bool found = false;
        for (int attempt = 0; attempt < max_attempts; ++attempt) {
            u = sample_subset(n, su.sub(uint64_t(attempt)));
            int m = u.count();
            if (m >= window.first && m <= window.second) {
                found = true;
                break;
            }
        }
        if (!found)
            throw RetryLimit("no subset landed in the typical size window after " +
                             std::to_string(max_attempts) + " draws");
        const auto& uw = u.words();
        int eta = 0, eta_prime = 0;
        for (int v = 0; v < n; ++v) {
            const uint64_t* rv = g.row(v);
            bool hit = false;
            for (size_t w = 0; w < uw.size(); ++w)
                if (rv[w] & uw[w]) {
                    hit = true;
                    break;
                }
            if (hit) continue;
            // no self loops, so the same row scan serves both sides
            if (u.contains(v)) ++eta;
            else ++eta_prime;
        }
        bool ok = eta >= 1 && eta_prime >= ln_n;
        row.values = {double(u.count()), double(eta), double(eta_prime),
                      expected_outside_isolated(n, u.count(), p), ok ? 1.0 : 0.0};
    });
    double frac = mean_of(column_values(res, 4));
    res.summary = {
        {"mean_eta", mean_of(column_values(res, 1))},
        {"mean_eta_prime", mean_of(column_values(res, 2))},
        {"mean_expected_eta_prime", mean_of(column_values(res, 3))},
        {"fraction_ok", frac},
        {"ln_n", ln_n},
    };
    add_verdict(res, "witness-fraction", res.failures() == 0 && frac >= floor);
    return res;
}

ExperimentResult run_threshold_sweep(const ExperimentSpec& spec) {
    ExperimentResult res;
    res.spec = spec;
    if (res.spec.name.empty()) res.spec.name = "threshold";
    const int n = spec.n;
    if (n < 4) throw DomainError("threshold sweep needs n >= 4");
    auto c_grid = parse_grid(spec.option_or("c_grid", std::string("0.2,0.5,1,1.5,2,3,5")),
                             "c_grid");
    for (double c : c_grid)
        if (!(c > 0.0 && c <= double(n))) throw DomainError("c_grid entries must lie in (0, n]");
    const bool exact_track = n <= kMuExactCap;
    const double slack = spec.option_or("mono_slack", 0.05);
    const int total = int(c_grid.size()) * spec.replicas;
    res.columns = {"c", "lower_log2", "upper_log2", "tree_log2"};
    // the exact track parallelizes inside mu_exact, the certificate track
    // across rows
    fill_rows(res, total, exact_track ? 1 : spec.workers, [&](int idx, ExperimentRow& row) {
        const double c = c_grid[size_t(idx / spec.replicas)];
        const double p = c / n;
        Graph g = sample_gnp(n, p, spec.seed.sub(uint64_t(idx)));
        Seed cert_seed = spec.seed.sub(uint64_t(idx)).sub(1);
        double lower = 0.0, upper = 0.0, tree_cert = 0.0;
        if (exact_track) {
            MuReport mu = mu_exact(g, spec.workers);
            lower = upper = log2_big(*mu.exact);
            MuReport certs = mu_lower_certificates(g, cert_seed, p);
            tree_cert = tag_value(certs.lower_bounds, "tree-components", 0.0);
        } else {
            MuReport certs = mu_lower_certificates(g, cert_seed, p);
            lower = std::max(0.0, certs.best_lower());
            tree_cert = tag_value(certs.lower_bounds, "tree-components", 0.0);
            upper = mu_upper_subcritical(g).best_upper();
        }
        row.values = {c, lower, upper, tree_cert};
    });
    bool ordered = true, monotone = true, tree_positive = true;
    double prev_median = -kInf;
    for (size_t gi = 0; gi < c_grid.size(); ++gi) {
        std::vector<double> lows, ups, trees;
        for (int r = 0; r < spec.replicas; ++r) {
            const ExperimentRow& row = res.rows[gi * size_t(spec.replicas) + size_t(r)];
            if (row.failed) continue;
            lows.push_back(row.values[1]);
            ups.push_back(row.values[2]);
            trees.push_back(row.values[3]);
            if (row.values[1] > row.values[2] + 1e-6) ordered = false;
        }
        double med_low = median_of(lows);
        const std::string tag = std::to_string(gi);
        res.summary.emplace_back("c_" + tag, c_grid[gi]);
        res.summary.emplace_back("median_lower_" + tag, med_low);
        res.summary.emplace_back("median_upper_" + tag, median_of(ups));
        res.summary.emplace_back("median_tree_" + tag, median_of(trees));
        if (med_low < prev_median * (1.0 - slack) - 1.0) monotone = false;
        prev_median = std::max(prev_median, med_low);
        if (c_grid[gi] >= 1.0 && median_of(trees) <= 0.0) tree_positive = false;
    }
    add_verdict(res, "bounds-ordered", res.failures() == 0 && ordered);
    add_verdict(res, "monotone-lower", res.failures() == 0 && monotone);
    add_verdict(res, "tree-positive", res.failures() == 0 && tree_positive);
    return res;
}

ExperimentResult run_tree_component_experiment(const ExperimentSpec& spec) {
    ExperimentResult res;
    res.spec = spec;
    if (res.spec.name.empty()) res.spec.name = "tree-components";
    const int n = spec.n;
    if (n < 4) throw DomainError("tree component experiment needs n >= 4");
    const double p = spec.resolve_p();
    std::string kopt = spec.option_or("k", std::string("auto"));
    const int k = kopt == "auto" ? std::max(2, int(std::floor(3.0 * std::log(double(n)))))
                                 : int(parse_ll(kopt, "k"));
    if (k < 1 || k > n) throw DomainError("component size k must lie in [1, n]");
    const double dup_floor = spec.option_or("dup_floor", 0.99);
    res.columns = {"x", "y"};
    fill_rows(res, spec.replicas, spec.workers, [&](int i, ExperimentRow& row) {
        Graph g = sample_gnp(n, p, spec.seed.sub(uint64_t(i)));
        ComponentCensus cc = component_census(g);
        std::map<AhuCode, long long> types;
        long long x = 0;
        for (int c = 0; c < cc.count(); ++c) {
            if (cc.sizes[size_t(c)] != k || !cc.is_tree(c)) continue;
            ++x;
            ++types[unrooted_tree_code(g, cc.members[size_t(c)])];
        }
        long long y = 0;
        for (const auto& [code, cnt] : types) y += cnt * (cnt - 1) / 2;
        row.values = {double(x), double(y)};
    });
    auto xs = column_values(res, 0);
    auto ys = column_values(res, 1);
    const double expected = expected_tree_components(n, k, p);
    const double se = stderr_of(xs);
    // a Poisson-width fallback keeps the window honest when every replica
    // returns the same count
    const double width = std::max(se, std::sqrt(std::max(expected, 1.0) / double(xs.size() + 1)));
    double frac_y0 = 0.0;
    for (double y : ys) frac_y0 += y == 0.0 ? 1.0 : 0.0;
    if (!ys.empty()) frac_y0 /= double(ys.size());
    res.summary = {
        {"k", double(k)},
        {"mean_x", mean_of(xs)},
        {"stderr_x", se},
        {"expected_x", expected},
        {"mean_y", mean_of(ys)},
        {"fraction_y_zero", frac_y0},
    };
    add_verdict(res, "mean-count",
                res.failures() == 0 && !xs.empty() &&
                    std::abs(mean_of(xs) - expected) <= 4.0 * width);
    add_verdict(res, "distinct-types",
                res.failures() == 0 && k >= 2 && !ys.empty() && frac_y0 >= dup_floor);
    return res;
}

ExperimentResult run_gw_experiment(const ExperimentSpec& spec) {
    ExperimentResult res;
    res.spec = spec;
    if (res.spec.name.empty()) res.spec.name = "gw";
    auto eps_grid = parse_grid(spec.option_or("eps_grid", std::string("0.05,0.1,0.2")),
                               "eps_grid");
    for (double eps : eps_grid)
        if (!(eps > 0.0 && eps < 1.0)) throw DomainError("eps_grid entries must lie in (0, 1)");
    const int forest_n = int(spec.option_or("forest_n", 1000.0));
    const int forest_reps = int(spec.option_or("forest_reps", 20.0));
    const int max_nodes = int(spec.option_or("max_nodes", 1000000.0));
    if (forest_n < 1 || forest_reps < 1) throw DomainError("forest options must be >= 1");
    res.columns = {"eps",        "mean_log_f", "std_error",  "truncated",
                   "mean_floor", "margin",     "forest_min", "forest_floor"};
    // one row per epsilon cell, each aggregating spec.replicas tree samples;
    // replica carries the cell index
    fill_rows(res, int(eps_grid.size()), 1, [&](int e, ExperimentRow& row) {
        const double eps = eps_grid[size_t(e)];
        GwConfig cfg{1.0 - eps, max_nodes};
        LogFStats st = estimate_log_f(cfg, spec.replicas, spec.seed.sub(uint64_t(e)),
                                      spec.workers);
        const double floor = gw_mean_floor(eps);
        const double margin = st.mean - 5.0 * st.std_error - floor;
        long long truncated = st.truncated_count;
        double forest_min = kInf;
        Seed forest_seed = spec.seed.sub(1000 + uint64_t(e));
        for (int rep = 0; rep < forest_reps; ++rep) {
            std::vector<RootedTree> trees;
            trees.reserve(size_t(forest_n));
            Seed srep = forest_seed.sub(uint64_t(rep));
            for (int t = 0; t < forest_n; ++t) {
                GwSample s = sample_gw_tree(cfg, srep.sub(uint64_t(t)));
                // a cut-off tree only shrinks its count, keeping the floor
                // comparison conservative
                if (s.truncated) ++truncated;
                trees.push_back(std::move(s.tree));
            }
            forest_min = std::min(forest_min, product_log_f(trees));
        }
        row.values = {eps,   st.mean,    st.std_error, double(truncated),
                      floor, margin,     forest_min,   gw_forest_floor(eps, forest_n)};
    });
    bool mean_ok = true, forest_ok = true;
    for (const ExperimentRow& row : res.rows) {
        if (row.failed) continue;
        const std::string tag = std::to_string(row.replica);
        res.summary.emplace_back("eps_" + tag, row.values[0]);
        res.summary.emplace_back("margin_" + tag, row.values[5]);
        res.summary.emplace_back("forest_gap_" + tag, row.values[6] - row.values[7]);
        if (row.values[5] <= 0.0) mean_ok = false;
        if (row.values[6] < row.values[7]) forest_ok = false;
    }
    res.summary.emplace_back("replicas_per_cell", double(spec.replicas));
    add_verdict(res, "mean-floor", res.failures() == 0 && mean_ok);
    add_verdict(res, "forest-floor", res.failures() == 0 && forest_ok);
    return res;
}

ExperimentResult run_anatomy_experiment(const ExperimentSpec& spec) {
    ExperimentResult res;
    res.spec = spec;
    if (res.spec.name.empty()) res.spec.name = "anatomy";
    const int n = spec.n;
    if (n < 8) throw DomainError("anatomy experiment needs n >= 8");
    const double p = spec.resolve_p();
    const double lambda = double(n) * p;
    if (!(lambda > 1.0 && lambda <= 3.0))
        throw DomainError("anatomy experiment needs n*p in (1, 3]");
    const double lambda_prime = conjugate_lambda(lambda);
    const double predicted = core_fraction(lambda);
    const double tol = spec.option_or("core_tol", 0.05);
    res.columns = {"core_frac",        "deviation",          "sum_log2_f",
                   "real_pendant_mean", "model_pendant_mean", "model_truncated"};
    fill_rows(res, spec.replicas, spec.workers, [&](int i, ExperimentRow& row) {
        Graph g = sample_gnp(n, p, spec.seed.sub(uint64_t(i)).sub(0));
        CoreDecomposition dec = core_decompose(g);
        const int core_n = dec.core_vertices.count();
        if (core_n == 0) throw DomainError("the 2-core came out empty");
        double sum_log2_f = 0.0;
        long long extra = 0;
        for (const auto& [v, tree] : dec.pendant) {
            sum_log2_f += log2_big(count_subtrees_exact(tree).f);
            extra += tree.size() - 1;
        }
        Graph core = induced_subgraph(g, dec.core_vertices);
        ContiguousModel model =
            build_contiguous_model(core, lambda_prime, spec.seed.sub(uint64_t(i)).sub(1));
        const double frac = double(core_n) / n;
        row.values = {frac,
                      frac - predicted,
                      sum_log2_f,
                      double(extra) / core_n,
                      double(model.graph.vertex_count() - core_n) / core_n,
                      model.truncated ? 1.0 : 0.0};
    });
    auto devs = column_values(res, 1);
    std::vector<double> abs_devs;
    for (double d : devs) abs_devs.push_back(std::abs(d));
    auto masses = column_values(res, 2);
    res.summary = {
        {"lambda", lambda},
        {"lambda_prime", lambda_prime},
        {"predicted_frac", predicted},
        {"mean_core_frac", mean_of(column_values(res, 0))},
        {"median_core_frac", median_of(column_values(res, 0))},
        {"median_abs_deviation", median_of(abs_devs)},
        {"mean_sum_log2_f", mean_of(masses)},
        {"mean_real_pendant", mean_of(column_values(res, 3))},
        {"mean_model_pendant", mean_of(column_values(res, 4))},
    };
    add_verdict(res, "core-size",
                res.failures() == 0 && !abs_devs.empty() && median_of(abs_devs) <= tol);
    add_verdict(res, "pendant-mass",
                res.failures() == 0 && !masses.empty() && min_of(masses) > 0.0);
    res.verdicts.emplace_back("pendant-model", "info");
    return res;
}

ExperimentResult run_regular_experiment(const ExperimentSpec& spec) {
    ExperimentResult res;
    res.spec = spec;
    if (res.spec.name.empty()) res.spec.name = "regular";
    const int n = spec.n, d = spec.d;
    if (d < 3) throw DomainError("regular experiment needs degree >= 3");
    if (n <= d || (long long)(n) * d % 2 != 0)
        throw DomainError("no simple d-regular graph exists for these n, d");
    const int iters = int(spec.option_or("spectral_iters", 2000.0));
    const double comb_floor = spec.option_or("comb_floor", 0.02);
    const double comb_frac = spec.option_or("comb_fraction", 0.8);
    const double conc_lo = spec.option_or("conc_lo", 0.5);
    const double conc_hi = spec.option_or("conc_hi", 1.5);
    const int conc_trials = int(spec.option_or("conc_trials", 200.0));
    const double conc_size = spec.option_or("conc_frac", 0.3);
    const int path_tries = int(spec.option_or("path_tries", 20.0));
    const double bound = 2.0 * std::sqrt(double(d) - 1.0) + 1.0;
    res.columns = {"lambda2", "spectral_bound", "comb_log2",
                   "comb_per_vertex", "conc_min", "conc_max"};
    fill_rows(res, spec.replicas, spec.workers, [&](int i, ExperimentRow& row) {
        Graph g = sample_regular(n, d, spec.seed.sub(uint64_t(i)));
        double l2 = second_eigenvalue(g, iters);
        MuReport certs =
            mu_lower_certificates(g, spec.seed.sub(uint64_t(i)).sub(1), std::nullopt,
                                  path_tries);
        double comb = tag_value(certs.lower_bounds, "comb", 0.0);
        EdgeConcentrationReport conc = edge_concentration(
            g, VertexSet::full(n), std::max(2, int(conc_size * n)), conc_trials,
            spec.seed.sub(uint64_t(i)).sub(2), -1.0, true);
        row.values = {l2, bound, comb, comb / n, conc.min_ratio, conc.max_ratio};
    });
    auto l2s = column_values(res, 0);
    auto per_vertex = column_values(res, 3);
    double frac_comb = 0.0;
    for (double v : per_vertex) frac_comb += v >= comb_floor ? 1.0 : 0.0;
    if (!res.rows.empty()) frac_comb /= double(res.rows.size());
    res.summary = {
        {"mean_lambda2", mean_of(l2s)},
        {"spectral_bound", bound},
        {"mean_comb_per_vertex", mean_of(per_vertex)},
        {"fraction_comb_ok", frac_comb},
        {"min_conc_ratio", min_of(column_values(res, 4))},
        {"max_conc_ratio", max_of(column_values(res, 5))},
    };
    add_verdict(res, "spectral-gap",
                res.failures() == 0 && !l2s.empty() && max_of(l2s) <= bound);
    add_verdict(res, "comb-certificate", frac_comb >= comb_frac);
    add_verdict(res, "edge-concentration",
                res.failures() == 0 && !l2s.empty() &&
                    min_of(column_values(res, 4)) >= conc_lo &&
                    max_of(column_values(res, 5)) <= conc_hi);
    return res;
}

ExperimentResult run_bounded_degree_experiment(const ExperimentSpec& spec) {
    ExperimentResult res;
    res.spec = spec;
    if (res.spec.name.empty()) res.spec.name = "bounded-degree";
    const int n = spec.n;
    if (n < 4 || n > kMuExactCap)
        throw DomainError("bounded degree experiment needs 4 <= n <= " +
                          std::to_string(kMuExactCap));
    const int max_deg = int(spec.option_or("max_deg", 3.0));
    if (max_deg < 1) throw DomainError("max_deg must be >= 1");
    const double delta = spec.option_or("delta", 0.1);
    const int max_attempts = int(spec.option_or("max_attempts", 200.0));
    const double p = spec.p_expr.empty() ? std::min(1.0, double(max_deg) / n)
                                         : spec.resolve_p();
    const double ceiling = 1.0 - delta;
    res.columns = {"ratio", "max_degree", "attempts"};
    // rows run one at a time; mu_exact takes the workers
    fill_rows(res, spec.replicas, 1, [&](int i, ExperimentRow& row) {
        Seed si = spec.seed.sub(uint64_t(i));
        Graph g;
        int seen = 0, attempt = 0;
        bool ok = false;
        for (; attempt < max_attempts; ++attempt) {
            g = sample_gnp(n, p, si.sub(uint64_t(attempt)));
            seen = 0;
            for (int v = 0; v < n; ++v) seen = std::max(seen, g.degree(v));
            if (seen <= max_deg) {
                ok = true;
                break;
            }
        }
        if (!ok)
            throw RetryLimit("no sample kept max degree <= " + std::to_string(max_deg) +
                             " within " + std::to_string(max_attempts) + " attempts");
        MuReport mu = mu_exact(g, spec.workers);
        row.values = {log2_big(*mu.exact) / n, double(seen), double(attempt + 1)};
    });
    // structured references at the same size: path, comb, perfect matching
    const double path_ratio = log2_big(*mu_exact(make_path(n), spec.workers).exact) / n;
    const int teeth = n / 2;
    const double comb_ratio =
        log2_big(*mu_exact(make_comb(teeth), spec.workers).exact) / (2.0 * teeth);
    Graph matching = make_empty(n);
    for (int v = 0; v + 1 < n; v += 2) matching.add_edge(v, v + 1);
    const double matching_ratio = log2_big(*mu_exact(matching, spec.workers).exact) / n;
    auto ratios = column_values(res, 0);
    res.summary = {
        {"mean_ratio", mean_of(ratios)},
        {"max_ratio", max_of(ratios)},
        {"path_ratio", path_ratio},
        {"comb_ratio", comb_ratio},
        {"matching_ratio", matching_ratio},
        {"ceiling", ceiling},
    };
    add_verdict(res, "density-gap",
                res.failures() == 0 && !ratios.empty() && max_of(ratios) < ceiling &&
                    path_ratio < ceiling && comb_ratio < ceiling &&
                    matching_ratio < ceiling);
    return res;
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
    if (spec.name == "xi") return run_xi_experiment(spec);
    if (spec.name == "second-order") return run_second_order_sweep(spec);
    if (spec.name == "uniqueness") return run_uniqueness_experiment(spec);
    if (spec.name == "threshold") return run_threshold_sweep(spec);
    if (spec.name == "tree-components") return run_tree_component_experiment(spec);
    if (spec.name == "gw") return run_gw_experiment(spec);
    if (spec.name == "anatomy") return run_anatomy_experiment(spec);
    if (spec.name == "regular") return run_regular_experiment(spec);
    if (spec.name == "bounded-degree") return run_bounded_degree_experiment(spec);
    throw ParseError("unknown experiment name: '" + spec.name + "'");
}

BoringCheck check_boring_inequality(long long grid_points) {
    if (grid_points < 2) throw DomainError("need at least 2 grid points");
    BoringCheck out;
    out.pass = true;
    out.worst_margin = kInf;
    auto probe = [&](double p) {
        double margin = boring_rhs(p) - boring_lhs(p);
        // on (0, 1/3] the exponential majorant of the left side must clear
        // the bar too
        if (p <= 1.0 / 3.0) margin = std::min(margin, boring_rhs(p) - boring_lhs_majorant(p));
        ++out.points;
        if (margin < out.worst_margin) {
            out.worst_margin = margin;
            out.worst_p = p;
        }
        if (margin <= 0.0) out.pass = false;
    };
    probe(1e-9);
    for (long long i = 1; i <= grid_points; ++i)
        probe(0.5 * double(i) / double(grid_points));
    return out;
}

}  // namespace mulab
