#include "gaborcx/cli_io.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <regex>
#include <set>
#include <sstream>

#include "gaborcx/errors.hpp"

namespace gaborcx {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string trim(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c != ' ' && c != '\t') out.push_back(c);
    }
    return out;
}

double parse_double(const std::string& text, const std::string& what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("cannot parse " + what + " from '" + text + "'");
    }
}

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string sign_name(Sign s) { return s == Sign::Plus ? "plus" : "minus"; }

Sign parse_sign(const std::string& s) {
    if (s == "plus" || s == "+") return Sign::Plus;
    if (s == "minus" || s == "-") return Sign::Minus;
    throw ConfigError("signal must be plus or minus, got '" + s + "'");
}

std::string mode_name(SpectrogramMode m) { return m == SpectrogramMode::ClosedForm ? "closed" : "numeric"; }

SpectrogramMode parse_mode(const std::string& s) {
    if (s == "closed" || s == "closed-form") return SpectrogramMode::ClosedForm;
    if (s == "numeric") return SpectrogramMode::Numeric;
    throw ConfigError("mode must be closed or numeric, got '" + s + "'");
}

json point_json(TFPoint p) { return json::array({p.x, p.omega}); }

json grid_json(const GridSpec& g) { return {{"t_start", g.t_start}, {"dt", g.dt}, {"length", g.length}}; }

GridSpec grid_from_json(const json& j) {
    return {j.at("t_start").get<double>(), j.at("dt").get<double>(), j.at("length").get<std::size_t>()};
}

json terms_json(const std::optional<ModulatedGaussianSum>& f) {
    if (!f) return nullptr;
    json arr = json::array();
    for (const auto& t : f->terms) arr.push_back({t.coeff.real(), t.coeff.imag(), t.shift, t.modulation});
    return arr;
}

std::optional<ModulatedGaussianSum> terms_from_json(const json& j) {
    if (j.is_null()) return std::nullopt;
    ModulatedGaussianSum f;
    for (const auto& t : j) {
        f.terms.push_back({cplx{t.at(0).get<double>(), t.at(1).get<double>()}, t.at(2).get<double>(),
                           t.at(3).get<double>()});
    }
    return f;
}

FrftMethod parse_frft_method(const std::string& s) {
    for (FrftMethod m : {FrftMethod::DirectQuadrature, FrftMethod::ChirpFft, FrftMethod::BranchExact}) {
        if (s == to_string(m)) return m;
    }
    throw ConfigError("unknown FrFT method '" + s + "'");
}

ShiftMethod parse_shift_method(const std::string& s) {
    for (ShiftMethod m : {ShiftMethod::None, ShiftMethod::GridAligned, ShiftMethod::Interpolated}) {
        if (s == to_string(m)) return m;
    }
    throw ConfigError("unknown shift method '" + s + "'");
}

void write_text(const fs::path& file, const std::string& text) {
    if (file.has_parent_path()) fs::create_directories(file.parent_path());
    std::ofstream os(file, std::ios::binary);
    if (!os) throw ConfigError("cannot open '" + file.string() + "' for writing");
    os << text;
}

void write_json(const fs::path& file, const json& j) { write_text(file, j.dump(2) + "\n"); }

json lattice_json(const TFLattice& l) {
    return {{"a", l.a},
            {"b", l.b},
            {"alpha", l.alpha.radians()},
            {"lambda", point_json(l.lambda)},
            {"jrange", {l.j_range.lo, l.j_range.hi}},
            {"krange", {l.k_range.lo, l.k_range.hi}}};
}

void error_record(std::ostream& err, const std::string& kind, const std::string& message) {
    err << json{{"error", {{"kind", kind}, {"message", message}}}}.dump() << "\n";
}

}  // namespace

std::vector<double> AxisSpec::values() const {
    if (!(step > 0.0)) throw ConfigError("axis step must be positive");
    if (!(hi >= lo)) throw ConfigError("axis upper bound below lower bound");
    const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = lo + static_cast<double>(i) * step;
    return v;
}

void RunConfig::validate() const {
    if (!(a > 0.0) || !std::isfinite(a)) throw ParameterError("a must be positive");
    (void)RotationAngle(alpha);
    make_point(lambda_x, lambda_w);
    if (!(b > 0.0) || !std::isfinite(b)) throw ParameterError("b must be positive");
    if (jrange.empty() || krange.empty()) throw EmptyLatticeError("lattice index range is empty");
    grid.validate();
    for (double t : {tol_oracle, tol_numeric, tol_phase}) {
        if (!(t >= 0.0)) throw ParameterError("tolerances must be non-negative");
    }
    if (!(epsilon > 0.0)) throw ParameterError("epsilon must be positive");
    if ((lattice_offset_x || lattice_offset_w) && guard) {
        const bool differs = lattice_offset_x.value_or(lambda_x) != lambda_x ||
                             lattice_offset_w.value_or(lambda_w) != lambda_w;
        if (differs) throw ConfigError("a lattice offset different from lambda requires the guard to be disabled");
    }
    xs.values();
    ws.values();
}

double parse_angle(const std::string& raw) {
    static const std::regex re(R"(^([+-]?)((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?(\*?pi)?(?:/((?:\d+\.?\d*|\.\d+)))?$)");
    const std::string text = trim(raw);
    std::smatch m;
    if (text.empty() || !std::regex_match(text, m, re) || (!m[2].matched && !m[3].matched)) {
        throw ConfigError("cannot parse angle '" + raw + "'");
    }
    if (m[3].matched && m[3].str().front() == '*' && !m[2].matched) {
        throw ConfigError("cannot parse angle '" + raw + "'");
    }
    double v = m[2].matched ? std::stod(m[2].str()) : 1.0;
    if (m[3].matched) v *= kPi;
    if (m[4].matched) {
        const double den = std::stod(m[4].str());
        if (den == 0.0) throw ConfigError("angle denominator is zero in '" + raw + "'");
        v /= den;
    }
    return m[1].str() == "-" ? -v : v;
}

IndexRange parse_range(const std::string& raw) {
    const std::string text = trim(raw);
    static const std::regex re(R"(^([+-]?\d+):([+-]?\d+)$)");
    std::smatch m;
    if (!std::regex_match(text, m, re)) throw ConfigError("index range must look like lo:hi, got '" + raw + "'");
    return {std::stol(m[1].str()), std::stol(m[2].str())};
}

AxisSpec parse_axis(const std::string& raw) {
    const std::string text = trim(raw);
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
    if (parts.size() != 3) throw ConfigError("axis must look like lo:hi:step, got '" + raw + "'");
    AxisSpec axis{parse_double(parts[0], "axis lo"), parse_double(parts[1], "axis hi"),
                  parse_double(parts[2], "axis step")};
    axis.values();
    return axis;
}

json to_json(const RunConfig& c) {
    json j = {{"a", c.a},
              {"alpha", c.alpha},
              {"lambda_x", c.lambda_x},
              {"lambda_w", c.lambda_w},
              {"b", c.b},
              {"jrange", {c.jrange.lo, c.jrange.hi}},
              {"krange", {c.krange.lo, c.krange.hi}},
              {"grid_start", c.grid.t_start},
              {"grid_dt", c.grid.dt},
              {"grid_len", c.grid.length},
              {"tol_oracle", c.tol_oracle},
              {"tol_numeric", c.tol_numeric},
              {"tol_phase", c.tol_phase},
              {"epsilon", c.epsilon},
              {"evaluator", to_string(c.evaluator)},
              {"out", c.out},
              {"seed", c.seed},
              {"interpolate", c.interpolate},
              {"guard", c.guard},
              {"lattice_offset_x", c.lattice_offset_x ? json(*c.lattice_offset_x) : json(nullptr)},
              {"lattice_offset_w", c.lattice_offset_w ? json(*c.lattice_offset_w) : json(nullptr)},
              {"signal", sign_name(c.signal)},
              {"mode", mode_name(c.mode)},
              {"xs", {c.xs.lo, c.xs.hi, c.xs.step}},
              {"ws", {c.ws.lo, c.ws.hi, c.ws.step}},
              {"pair_dir", c.pair_dir ? json(*c.pair_dir) : json(nullptr)},
              {"properties", c.properties ? json(*c.properties) : json(nullptr)},
              {"battery_tol", c.battery_tol ? json(*c.battery_tol) : json(nullptr)}};
    return j;
}

RunConfig apply_config_json(const json& j, RunConfig c) {
    if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
    auto num = [](const json& v, const std::string& key) {
        if (!v.is_number()) throw ConfigError("config key '" + key + "' must be a number");
        return v.get<double>();
    };
    auto opt_num = [&](const json& v, const std::string& key) -> std::optional<double> {
        if (v.is_null()) return std::nullopt;
        return num(v, key);
    };
    auto range = [](const json& v, const std::string& key) {
        if (v.is_string()) return parse_range(v.get<std::string>());
        if (v.is_array() && v.size() == 2) return IndexRange{v[0].get<long>(), v[1].get<long>()};
        throw ConfigError("config key '" + key + "' must be \"lo:hi\" or [lo, hi]");
    };
    auto axis = [](const json& v, const std::string& key) {
        if (v.is_string()) return parse_axis(v.get<std::string>());
        if (v.is_array() && v.size() == 3) return AxisSpec{v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
        throw ConfigError("config key '" + key + "' must be \"lo:hi:step\" or [lo, hi, step]");
    };
    auto str = [](const json& v, const std::string& key) {
        if (!v.is_string()) throw ConfigError("config key '" + key + "' must be a string");
        return v.get<std::string>();
    };
    auto boolean = [](const json& v, const std::string& key) {
        if (!v.is_boolean()) throw ConfigError("config key '" + key + "' must be true or false");
        return v.get<bool>();
    };

    for (const auto& [key, v] : j.items()) {
        if (key == "a") c.a = num(v, key);
        else if (key == "alpha") c.alpha = v.is_string() ? parse_angle(v.get<std::string>()) : num(v, key);
        else if (key == "lambda_x") c.lambda_x = num(v, key);
        else if (key == "lambda_w") c.lambda_w = num(v, key);
        else if (key == "b") c.b = num(v, key);
        else if (key == "jrange") c.jrange = range(v, key);
        else if (key == "krange") c.krange = range(v, key);
        else if (key == "grid_start") c.grid.t_start = num(v, key);
        else if (key == "grid_dt") c.grid.dt = num(v, key);
        else if (key == "grid_len") {
            if (!v.is_number_unsigned()) throw ConfigError("config key 'grid_len' must be a positive integer");
            c.grid.length = v.get<std::size_t>();
        }
        else if (key == "tol_oracle") c.tol_oracle = num(v, key);
        else if (key == "tol_numeric") c.tol_numeric = num(v, key);
        else if (key == "tol_phase") c.tol_phase = num(v, key);
        else if (key == "epsilon") c.epsilon = num(v, key);
        else if (key == "evaluator") c.evaluator = parse_evaluator(str(v, key));
        else if (key == "out") c.out = str(v, key);
        else if (key == "seed") {
            if (!v.is_number_unsigned()) throw ConfigError("config key 'seed' must be a non-negative integer");
            c.seed = v.get<std::uint64_t>();
        }
        else if (key == "interpolate") c.interpolate = boolean(v, key);
        else if (key == "guard") c.guard = boolean(v, key);
        else if (key == "lattice_offset_x") c.lattice_offset_x = opt_num(v, key);
        else if (key == "lattice_offset_w") c.lattice_offset_w = opt_num(v, key);
        else if (key == "signal") c.signal = parse_sign(str(v, key));
        else if (key == "mode") c.mode = parse_mode(str(v, key));
        else if (key == "xs") c.xs = axis(v, key);
        else if (key == "ws") c.ws = axis(v, key);
        else if (key == "pair_dir") c.pair_dir = v.is_null() ? std::nullopt : std::optional(str(v, key));
        else if (key == "properties") {
            if (v.is_null()) c.properties.reset();
            else c.properties = v.get<std::vector<std::string>>();
        }
        else if (key == "battery_tol") c.battery_tol = opt_num(v, key);
        else throw ConfigError("unknown config key '" + key + "'");
    }
    return c;
}

// ---------------------------------------------------------------------------
// Report serialization

json to_json(const MagnitudeReport& r) {
    json records = json::array();
    for (const auto& rec : r.records) {
        json e = {{"point", point_json(rec.point)}, {"plus", rec.plus}, {"minus", rec.minus}, {"abs_diff", rec.abs_diff}};
        if (rec.numeric_plus) {
            e["numeric_plus"] = *rec.numeric_plus;
            e["numeric_minus"] = *rec.numeric_minus;
        }
        records.push_back(std::move(e));
    }
    return {{"lattice", lattice_json(r.lattice)},
            {"evaluator", to_string(r.evaluator)},
            {"tolerance", r.tolerance},
            {"max_abs_diff", r.max_abs_diff},
            {"max_cross_deviation", r.max_cross_deviation},
            {"passed", r.passed},
            {"records", std::move(records)}};
}

json to_json(const DistinctnessReport& r) {
    json j = {{"norm_f", r.norm_f},
              {"norm_g", r.norm_g},
              {"inner_product_modulus", r.inner_product_modulus},
              {"cosine_similarity", r.cosine_similarity},
              {"tol_phase", r.tol_phase},
              {"phase_equivalent", r.phase_equivalent},
              {"passed", r.passed()}};
    if (r.witness) {
        j["witness"] = {{"t", r.witness->t},
                        {"f", {r.witness->f_value.real(), r.witness->f_value.imag()}},
                        {"g", {r.witness->g_value.real(), r.witness->g_value.imag()}}};
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

json to_json(const SeparationReport& r) {
    return {{"region", {{"x", {r.region.x_lo, r.region.x_hi}}, {"omega", {r.region.omega_lo, r.region.omega_hi}}}},
            {"spacing", r.spacing},
            {"argmax", point_json(r.argmax)},
            {"gap", r.gap},
            {"min_gap", r.min_gap},
            {"passed", r.passed}};
}

json to_json(const DecayReport& r) {
    return {{"epsilon", r.epsilon},
            {"C_epsilon", r.C_epsilon},
            {"grid", {{"lo", r.grid.lo}, {"hi", r.grid.hi}, {"step", r.grid.step}}},
            {"points_checked", r.points_checked},
            {"violation_count", r.violation_count},
            {"worst_ratio", r.worst_ratio},
            {"first_violation", r.first_violation ? point_json(*r.first_violation) : json(nullptr)},
            {"passed", r.passed}};
}

json to_json(const BatteryReport& r) {
    json results = json::array();
    for (const auto& p : r.results) {
        results.push_back({{"name", p.name},
                           {"residual", p.residual},
                           {"tolerance", p.tolerance},
                           {"passed", p.passed},
                           {"detail", p.detail}});
    }
    return {{"passed", r.passed}, {"note", r.note}, {"results", std::move(results)}};
}

// ---------------------------------------------------------------------------
// Pair files

void write_pair(const fs::path& dir, const CounterexamplePair& pair) {
    const auto& p = pair.provenance;
    json meta = {{"format", "gaborcx-pair/1"},
                 {"kind", pair.is_base() ? "base pair" : "transformed pair"},
                 {"a", pair.a},
                 {"alpha", pair.alpha.radians()},
                 {"lambda", point_json(pair.lambda)},
                 {"grid", grid_json(pair.plus_sampled.grid)},
                 {"real_valued", pair.is_base()},
                 {"provenance",
                  {{"grid", grid_json(p.grid)},
                   {"frft_method", to_string(p.frft_method)},
                   {"frft_decomposed", p.frft_decomposed},
                   {"shift", to_string(p.shift)},
                   {"shift_samples", p.shift_samples}}},
                 {"plus_symbolic", terms_json(pair.plus_symbolic)},
                 {"minus_symbolic", terms_json(pair.minus_symbolic)}};
    write_json(dir / "pair.json", meta);

    std::ostringstream csv;
    csv << "t,plus_re,plus_im,minus_re,minus_im\n";
    for (std::size_t i = 0; i < pair.plus_sampled.size(); ++i) {
        const cplx u = pair.plus_sampled.values[i];
        const cplx v = pair.minus_sampled.values[i];
        csv << fmt17(pair.plus_sampled.t(i)) << ',' << fmt17(u.real()) << ',' << fmt17(u.imag()) << ','
            << fmt17(v.real()) << ',' << fmt17(v.imag()) << '\n';
    }
    write_text(dir / "signals.csv", csv.str());
}

CounterexamplePair read_pair(const fs::path& dir) {
    std::ifstream is(dir / "pair.json");
    if (!is) throw ConfigError("cannot read '" + (dir / "pair.json").string() + "'");
    json meta;
    try {
        meta = json::parse(is);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed pair.json: ") + e.what());
    }
    if (meta.value("format", "") != "gaborcx-pair/1") throw ConfigError("pair.json has an unknown format tag");

    CounterexamplePair pair;
    try {
        pair.a = meta.at("a").get<double>();
        pair.alpha = RotationAngle(meta.at("alpha").get<double>());
        pair.lambda = {meta.at("lambda").at(0).get<double>(), meta.at("lambda").at(1).get<double>()};
        const auto& prov = meta.at("provenance");
        pair.provenance = {grid_from_json(prov.at("grid")), parse_frft_method(prov.at("frft_method").get<std::string>()),
                           prov.at("frft_decomposed").get<bool>(),
                           parse_shift_method(prov.at("shift").get<std::string>()), prov.at("shift_samples").get<long>()};
        pair.plus_symbolic = terms_from_json(meta.at("plus_symbolic"));
        pair.minus_symbolic = terms_from_json(meta.at("minus_symbolic"));
        const GridSpec grid = grid_from_json(meta.at("grid"));
        pair.plus_sampled = {grid, {}};
        pair.minus_sampled = {grid, {}};
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed pair.json: ") + e.what());
    }

    std::ifstream csv(dir / "signals.csv");
    if (!csv) throw ConfigError("cannot read '" + (dir / "signals.csv").string() + "'");
    std::string line;
    std::getline(csv, line);
    if (line != "t,plus_re,plus_im,minus_re,minus_im") throw ConfigError("signals.csv has an unexpected header");
    while (std::getline(csv, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::vector<double> cols;
        for (std::string cell; std::getline(ss, cell, ',');) cols.push_back(parse_double(cell, "signals.csv cell"));
        if (cols.size() != 5) throw ConfigError("signals.csv row with " + std::to_string(cols.size()) + " columns");
        pair.plus_sampled.values.emplace_back(cols[1], cols[2]);
        pair.minus_sampled.values.emplace_back(cols[3], cols[4]);
    }
    pair.plus_sampled.validate();
    pair.minus_sampled.validate();
    return pair;
}

void write_spectrogram_csv(const fs::path& file, const std::vector<double>& xs, const std::vector<double>& ws,
                           const std::vector<double>& magnitudes) {
    if (magnitudes.size() != xs.size() * ws.size()) throw ParameterError("spectrogram size mismatch");
    std::ostringstream os;
    os << "x";
    for (double x : xs) os << ',' << fmt17(x);
    os << "\nomega";
    for (double w : ws) os << ',' << fmt17(w);
    os << '\n';
    for (std::size_t i = 0; i < xs.size(); ++i) {
        for (std::size_t k = 0; k < ws.size(); ++k) {
            if (k) os << ',';
            os << fmt17(magnitudes[i * ws.size() + k]);
        }
        os << '\n';
    }
    write_text(file, os.str());
}

// ---------------------------------------------------------------------------
// Commands

CounterexamplePair pair_from_config(const RunConfig& cfg) {
    if (cfg.pair_dir) return read_pair(*cfg.pair_dir);
    cfg.validate();
    if (cfg.alpha == 0.0 && cfg.lambda_x == 0.0 && cfg.lambda_w == 0.0) return make_base_pair(cfg.a, cfg.grid);
    GridPolicy policy;
    policy.grid = cfg.grid;
    policy.allow_interpolation = cfg.interpolate;
    return make_transformed_pair(cfg.a, cfg.alpha, {cfg.lambda_x, cfg.lambda_w}, policy);
}

int cmd_generate(const RunConfig& cfg, std::ostream& log, std::ostream&) {
    const CounterexamplePair pair = pair_from_config(cfg);
    const fs::path out(cfg.out);
    write_pair(out, pair);
    write_json(out / "config.json", to_json(cfg));
    log << "generate: wrote " << (pair.is_base() ? "base pair" : "transformed pair") << " ("
        << pair.plus_sampled.size() << " samples, frft " << to_string(pair.provenance.frft_method) << ", shift "
        << to_string(pair.provenance.shift) << ") to " << out.string() << "\n";
    return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& log, std::ostream& err) {
    cfg.validate();
    const CounterexamplePair pair = pair_from_config(cfg);

    TFLattice lattice;
    lattice.a = pair.a;
    lattice.b = cfg.b;
    lattice.alpha = pair.alpha;
    lattice.lambda = {cfg.lattice_offset_x.value_or(pair.lambda.x), cfg.lattice_offset_w.value_or(pair.lambda.omega)};
    lattice.j_range = cfg.jrange;
    lattice.k_range = cfg.krange;

    std::vector<std::string> failed;
    json report;
    report["config"] = to_json(cfg);
    report["pair"] = {{"kind", pair.is_base() ? "base pair" : "transformed pair"},
                      {"a", pair.a},
                      {"alpha", pair.alpha.radians()},
                      {"lambda", point_json(pair.lambda)}};

    json agreement = json::array();
    auto run_agreement = [&](Evaluator e, double tol) {
        const MagnitudeReport r = check_lattice_agreement(pair, lattice, tol, e, cfg.guard);
        if (!r.passed) failed.push_back(std::string("lattice-agreement[") + to_string(e) + "]");
        log << "verify: lattice agreement (" << to_string(e) << ") max_abs_diff " << r.max_abs_diff << " tol " << tol
            << (r.passed ? " pass" : " FAIL") << "\n";
        agreement.push_back(to_json(r));
    };
    if (cfg.evaluator != Evaluator::Numeric) run_agreement(Evaluator::Oracle, cfg.tol_oracle);
    if (cfg.evaluator != Evaluator::Oracle) run_agreement(Evaluator::Numeric, cfg.tol_numeric);
    report["lattice_agreement"] = std::move(agreement);

    const DistinctnessReport distinct = check_global_phase_distinct(pair, cfg.tol_phase);
    if (!distinct.passed()) failed.push_back("distinctness");
    log << "verify: cosine similarity " << distinct.cosine_similarity << (distinct.passed() ? " pass" : " FAIL")
        << "\n";
    report["distinctness"] = to_json(distinct);

    const double a = pair.a;
    const TFPoint centre = rotate_tf({a / 2.0, 0.0}, pair.alpha) + pair.lambda;
    const Region region{centre.x - a / 2.0, centre.x + a / 2.0, centre.omega - a / 2.0, centre.omega + a / 2.0};
    const double min_gap = 0.9 * std::exp(-kPi / (8.0 * a * a)) * std::exp(-kPi * a * a / 8.0);
    const SeparationReport separation = check_offlattice_separation(pair, region, min_gap);
    if (!separation.passed) failed.push_back("separation");
    log << "verify: off-lattice gap " << separation.gap << (separation.passed ? " pass" : " FAIL") << "\n";
    report["separation"] = to_json(separation);

    const DecayEnvelope envelope = fit_C_epsilon(pair.a, pair.lambda, cfg.epsilon);
    const DecayReport decay = check_decay(pair, envelope, SquareGrid{-5.0, 5.0, 0.1});
    if (!decay.passed) failed.push_back("decay");
    log << "verify: decay C_eps " << decay.C_epsilon << " violations " << decay.violation_count
        << (decay.passed ? " pass" : " FAIL") << "\n";
    report["decay"] = to_json(decay);

    BatteryConfig bc;
    bc.seed = cfg.seed;
    bc.grid = cfg.grid;
    const BatteryReport battery = run_property_battery(bc);
    for (const auto& r : battery.results) {
        if (!r.passed) failed.push_back("battery:" + r.name);
    }
    log << "verify: property battery " << (battery.passed ? "pass" : "FAIL") << "\n";
    report["battery"] = to_json(battery);

    report["passed"] = failed.empty();
    report["failed_checks"] = failed;
    write_json(fs::path(cfg.out) / "report.json", report);

    if (!failed.empty()) {
        err << "verify: failed checks:";
        for (const auto& f : failed) err << ' ' << f;
        err << "\n";
        return kExitCheckFailed;
    }
    return kExitOk;
}

int cmd_spectrogram(const RunConfig& cfg, std::ostream& log, std::ostream&) {
    cfg.validate();
    const CounterexamplePair pair = pair_from_config(cfg);
    const auto xs = cfg.xs.values();
    const auto ws = cfg.ws.values();
    std::vector<double> mags;
    if (cfg.mode == SpectrogramMode::Numeric) {
        mags = spectrogram(pair.sampled(cfg.signal), xs, ws, SpectrogramMode::Numeric).magnitudes();
    } else if (const auto& sym = pair.symbolic(cfg.signal)) {
        mags = spectrogram(*sym, xs, ws, SpectrogramMode::ClosedForm).magnitudes();
    } else {
        // no symbolic form after a generic FrFT; the rotated closed form gives the magnitude
        mags.reserve(xs.size() * ws.size());
        for (double x : xs)
            for (double w : ws) mags.push_back(mag_oracle(pair.a, cfg.signal, pair.alpha.radians(), pair.lambda, {x, w}));
    }
    const fs::path file = fs::path(cfg.out) / "spectrogram.csv";
    write_spectrogram_csv(file, xs, ws, mags);
    log << "spectrogram: " << xs.size() << "x" << ws.size() << " " << mode_name(cfg.mode) << " grid of |V f_"
        << sign_name(cfg.signal) << "| to " << file.string() << "\n";
    return kExitOk;
}

int cmd_battery(const RunConfig& cfg, std::ostream& log, std::ostream& err) {
    cfg.grid.validate();
    BatteryConfig bc;
    bc.seed = cfg.seed;
    bc.grid = cfg.grid;
    bc.properties = cfg.properties;
    bc.tolerance_override = cfg.battery_tol;
    const BatteryReport report = run_property_battery(bc);
    write_json(fs::path(cfg.out) / "battery.json", to_json(report));
    for (const auto& r : report.results) {
        log << "battery: " << r.name << " residual " << r.residual << " tol " << r.tolerance
            << (r.passed ? " pass" : " FAIL") << "\n";
    }
    if (!report.note.empty()) log << "battery: " << report.note << "\n";
    if (!report.passed) {
        err << "battery: failed properties:";
        for (const auto& r : report.results)
            if (!r.passed) err << ' ' << r.name;
        err << "\n";
        return kExitCheckFailed;
    }
    return kExitOk;
}

int run_cli(int argc, const char* const* argv, std::ostream& log, std::ostream& err) {
    CLI::App app{"Gabor phase-retrieval counterexample toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    std::string alpha_text, jrange_text, krange_text, evaluator_text, signal_text, mode_text, xs_text, ws_text;
    std::string config_path, properties_text;
    double grid_start = cfg.grid.t_start, grid_dt = cfg.grid.dt;
    std::size_t grid_len = cfg.grid.length;
    bool no_guard = false, align_only = false;
    double lattice_offset_x = 0.0, lattice_offset_w = 0.0, battery_tol = 0.0;
    std::string pair_dir;

    app.add_option("--a", cfg.a, "lattice time spacing a > 0");
    app.add_option("--alpha", alpha_text, "rotation angle in radians; accepts pi forms such as pi/3");
    app.add_option("--lambda-x", cfg.lambda_x, "time offset x0");
    app.add_option("--lambda-w", cfg.lambda_w, "frequency offset w0");
    app.add_option("--b", cfg.b, "lattice frequency spacing b > 0");
    app.add_option("--jrange", jrange_text, "j index range lo:hi (use --jrange=-4:4 for negatives)");
    app.add_option("--krange", krange_text, "k index range lo:hi");
    app.add_option("--grid-start", grid_start, "first sample time");
    app.add_option("--grid-dt", grid_dt, "sample spacing");
    app.add_option("--grid-len", grid_len, "number of samples");
    app.add_option("--tol-oracle", cfg.tol_oracle, "tolerance for closed-form checks");
    app.add_option("--tol-numeric", cfg.tol_numeric, "tolerance for numeric checks");
    app.add_option("--tol-phase", cfg.tol_phase, "global-phase cosine tolerance");
    app.add_option("--epsilon", cfg.epsilon, "decay exponent slack");
    app.add_option("--evaluator", evaluator_text, "oracle, numeric or both");
    app.add_option("--out", cfg.out, "output directory");
    app.add_option("--seed", cfg.seed, "seed for random probe points");
    app.add_option("--config", config_path, "JSON config file; its keys override flags");
    app.add_option("--pair", pair_dir, "load the pair from a generate output directory");
    app.add_flag("--align-only", align_only, "refuse off-grid time shifts instead of interpolating");
    app.add_flag("--no-guard", no_guard, "allow lattices that do not belong to the pair");
    auto* off_x = app.add_option("--lattice-offset-x", lattice_offset_x, "lattice offset x (default lambda-x)");
    auto* off_w = app.add_option("--lattice-offset-w", lattice_offset_w, "lattice offset w (default lambda-w)");
    app.add_option("--signal", signal_text, "spectrogram signal: plus or minus");
    app.add_option("--mode", mode_text, "spectrogram mode: closed or numeric");
    app.add_option("--xs", xs_text, "spectrogram x axis lo:hi:step");
    app.add_option("--ws", ws_text, "spectrogram omega axis lo:hi:step");
    app.add_option("--properties", properties_text, "battery: comma-separated property names ('' for none)");
    auto* btol = app.add_option("--tol", battery_tol, "battery: tolerance override for every property");

    auto* generate = app.add_subcommand("generate", "build a counterexample pair and write it to disk");
    auto* verify = app.add_subcommand("verify", "run every certification check and write report.json");
    auto* spectro = app.add_subcommand("spectrogram", "write a magnitude grid as CSV");
    auto* battery = app.add_subcommand("battery", "run the property battery");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        log << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        error_record(err, "usage", e.what());
        return kExitUsage;
    }

    try {
        if (!alpha_text.empty()) cfg.alpha = parse_angle(alpha_text);
        if (!jrange_text.empty()) cfg.jrange = parse_range(jrange_text);
        if (!krange_text.empty()) cfg.krange = parse_range(krange_text);
        cfg.grid = {grid_start, grid_dt, grid_len};
        if (!evaluator_text.empty()) cfg.evaluator = parse_evaluator(evaluator_text);
        if (!signal_text.empty()) cfg.signal = parse_sign(signal_text);
        if (!mode_text.empty()) cfg.mode = parse_mode(mode_text);
        if (!xs_text.empty()) cfg.xs = parse_axis(xs_text);
        if (!ws_text.empty()) cfg.ws = parse_axis(ws_text);
        if (!pair_dir.empty()) cfg.pair_dir = pair_dir;
        if (align_only) cfg.interpolate = false;
        if (no_guard) cfg.guard = false;
        if (off_x->count() > 0) cfg.lattice_offset_x = lattice_offset_x;
        if (off_w->count() > 0) cfg.lattice_offset_w = lattice_offset_w;
        if (app.get_option("--properties")->count() > 0) {
            std::vector<std::string> names;
            std::stringstream ss(properties_text);
            for (std::string name; std::getline(ss, name, ',');) {
                if (!trim(name).empty()) names.push_back(trim(name));
            }
            cfg.properties = names;
        }
        if (btol->count() > 0) cfg.battery_tol = battery_tol;

        if (!config_path.empty()) {
            std::ifstream is(config_path);
            if (!is) throw ConfigError("cannot read config file '" + config_path + "'");
            json j;
            try {
                j = json::parse(is);
            } catch (const json::exception& e) {
                throw ConfigError(std::string("malformed config file: ") + e.what());
            }
            cfg = apply_config_json(j, cfg);
        }

        if (generate->parsed()) return cmd_generate(cfg, log, err);
        if (verify->parsed()) return cmd_verify(cfg, log, err);
        if (spectro->parsed()) return cmd_spectrogram(cfg, log, err);
        if (battery->parsed()) return cmd_battery(cfg, log, err);
    } catch (const Error& e) {
        error_record(err, e.kind(), e.what());
        return kExitUsage;
    } catch (const fs::filesystem_error& e) {
        error_record(err, "io", e.what());
        return kExitUsage;
    }
    error_record(err, "usage", "no subcommand given");
    return kExitUsage;
}

}  // namespace gaborcx
