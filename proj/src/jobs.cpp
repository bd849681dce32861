#include "ptsusy/jobs.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "ptsusy/kernels.hpp"
#include "ptsusy/susy1.hpp"
#include "ptsusy/susy2.hpp"

namespace ptsusy::jobs {

namespace {

const json& field(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object() || !obj.contains(key))
        throw ValidationError("missing field", path + "." + key);
    return obj.at(key);
}

double number(const json& obj, const std::string& key, const std::string& path) {
    const json& v = field(obj, key, path);
    if (!v.is_number())
        throw ValidationError("expected a number", path + "." + key);
    const double d = v.get<double>();
    if (!std::isfinite(d))
        throw ValidationError("expected a finite number", path + "." + key);
    return d;
}

std::optional<double> optional_number(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.contains(key))
        return std::nullopt;
    return number(obj, key, path);
}

int integer(const json& obj, const std::string& key, const std::string& path) {
    const json& v = field(obj, key, path);
    if (!v.is_number_integer())
        throw ValidationError("expected an integer", path + "." + key);
    return v.get<int>();
}

std::string text(const json& obj, const std::string& key, const std::string& path) {
    const json& v = field(obj, key, path);
    if (!v.is_string())
        throw ValidationError("expected a string", path + "." + key);
    return v.get<std::string>();
}

Side side_of(const json& t) {
    if (!t.contains("side"))
        return Side::left;
    const std::string s = text(t, "side", "transform");
    if (s == "left")
        return Side::left;
    if (s == "right")
        return Side::right;
    throw ValidationError("expected \"left\" or \"right\"", "transform.side");
}

cplx complex_epsilon(const json& t) {
    const json& e = field(t, "epsilon", "transform");
    if (e.is_object())
        return {number(e, "re", "transform.epsilon"), number(e, "im", "transform.epsilon")};
    if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number())
        return {e[0].get<double>(), e[1].get<double>()};
    throw ValidationError("expected {\"re\": .., \"im\": ..}", "transform.epsilon");
}

template <typename T>
void write_file(const std::filesystem::path& path, const T& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw Error("cannot write " + path.string());
    os << content;
}

void write_json(const std::filesystem::path& path, const json& j) { write_file(path, j.dump(2) + "\n"); }

std::vector<double> sample_grid(const OutputOptions& o) {
    std::vector<double> xs(o.samples);
    for (int i = 0; i < o.samples; ++i)
        xs[i] = o.samples == 1 ? o.x_min : o.x_min + (o.x_max - o.x_min) * i / (o.samples - 1);
    return xs;
}

std::string potential_csv(const PartnerPotential& t, const OutputOptions& o) {
    const std::vector<double> xs = sample_grid(o);
    const std::vector<double> vt = kernels::sample_parallel([&t](double x) { return t.value(x); }, xs);
    std::string csv = "x,V,V_tilde\n";
    for (std::size_t i = 0; i < xs.size(); ++i)
        csv += format_number(xs[i]) + "," + format_number(potential_value(t.params(), xs[i])) + "," +
               format_number(vt[i]) + "\n";
    return csv;
}

std::vector<SpectrumLevel> present_levels(const std::vector<SpectrumLevel>& levels) {
    std::vector<SpectrumLevel> out;
    for (const SpectrumLevel& lv : levels)
        if (lv.tag != LevelTag::deleted)
            out.push_back(lv);
    return out;
}

json level_json(const SpectrumLevel& lv) {
    json j = {{"energy", lv.energy}, {"tag", to_string(lv.tag)}};
    j["original_index"] = lv.original_index ? json(*lv.original_index) : json(nullptr);
    return j;
}

json params_json(const PTParams& p) { return {{"lambda", p.lambda()}, {"nu", p.nu()}, {"mu", p.mu()}}; }

json make_config(double lambda, double nu, json transform) {
    return {{"params", {{"lambda", lambda}, {"nu", nu}}}, {"transform", std::move(transform)}};
}

} // namespace

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

const std::vector<std::string>& case_names() {
    static const std::vector<std::string> names{
        "none",         "delete_ground",  "create_ground", "isospectral_first", "delete_two",
        "create_two",   "iso_two_real",   "create_one",    "move_level",        "delete_one",
        "iso_complex",  "confluent_create", "confluent_iso", "confluent_delete"};
    return names;
}

JobConfig parse_config(const json& j) {
    if (!j.is_object())
        throw ValidationError("config must be a JSON object", "$");
    JobConfig cfg;
    const json& p = field(j, "params", "$");
    cfg.params = PTParams(number(p, "lambda", "params"), number(p, "nu", "params"));

    cfg.transform = field(j, "transform", "$");
    const std::string kind = text(cfg.transform, "case", "transform");
    const auto& names = case_names();
    if (std::find(names.begin(), names.end(), kind) == names.end())
        throw ValidationError("unknown case \"" + kind + "\"", "transform.case");

    if (j.contains("output")) {
        const json& o = j.at("output");
        if (o.contains("samples"))
            cfg.output.samples = integer(o, "samples", "output");
        if (auto v = optional_number(o, "x_min", "output"))
            cfg.output.x_min = *v;
        if (auto v = optional_number(o, "x_max", "output"))
            cfg.output.x_max = *v;
        if (o.contains("eigenfunctions")) {
            const json& e = o.at("eigenfunctions");
            if (!e.is_array())
                throw ValidationError("expected an array of integers", "output.eigenfunctions");
            for (const json& k : e) {
                if (!k.is_number_integer() || k.get<int>() < 0)
                    throw ValidationError("expected non-negative integers", "output.eigenfunctions");
                cfg.output.eigenfunctions.push_back(k.get<int>());
            }
        }
        if (cfg.output.samples < 2)
            throw ValidationError("need at least 2 samples", "output.samples");
        if (!(cfg.output.x_min >= kGuard && cfg.output.x_max <= kHalfPi - kGuard && cfg.output.x_min < cfg.output.x_max))
            throw ValidationError("sample range must be ordered and inside the guarded interval", "output.x_min");
    }

    if (j.contains("oracle")) {
        const json& o = j.at("oracle");
        if (o.contains("grid_points"))
            cfg.oracle.grid_points = integer(o, "grid_points", "oracle");
        if (auto v = optional_number(o, "guard_delta", "oracle"))
            cfg.oracle.guard_delta = *v;
        if (o.contains("levels"))
            cfg.oracle.levels = integer(o, "levels", "oracle");
        if (o.contains("richardson")) {
            if (!o.at("richardson").is_boolean())
                throw ValidationError("expected a boolean", "oracle.richardson");
            cfg.oracle.richardson = o.at("richardson").get<bool>();
        }
        if (auto v = optional_number(o, "rel_tol", "oracle"))
            cfg.rel_tol = *v;
        if (auto v = optional_number(o, "residual_tol", "oracle"))
            cfg.residual_tol = *v;
        if (!(cfg.rel_tol > 0.0))
            throw ValidationError("must be positive", "oracle.rel_tol");
    }
    cfg.oracle.validate();

    if (j.contains("expected_spectrum")) {
        const json& e = j.at("expected_spectrum");
        if (!e.is_array())
            throw ValidationError("expected an array of numbers", "expected_spectrum");
        std::vector<double> levels;
        for (const json& v : e) {
            if (!v.is_number())
                throw ValidationError("expected an array of numbers", "expected_spectrum");
            levels.push_back(v.get<double>());
        }
        if (!std::is_sorted(levels.begin(), levels.end()))
            throw ValidationError("levels must be ascending", "expected_spectrum");
        cfg.expected_spectrum = levels;
    }
    return cfg;
}

JobConfig load_config(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is)
        throw ValidationError("cannot open " + path.string(), "--config");
    json j;
    try {
        j = json::parse(is);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("invalid JSON: ") + e.what(), "--config");
    }
    return parse_config(j);
}

std::shared_ptr<PartnerPotential> build_transform(const JobConfig& cfg) {
    const json& t = cfg.transform;
    const PTParams& p = cfg.params;
    const std::string kind = text(t, "case", "transform");
    const std::string at = "transform";
    if (kind == "none")
        return std::make_shared<IdentityPartner>(p);
    if (kind == "delete_ground")
        return delete_ground(p);
    if (kind == "create_ground")
        return create_ground(p, number(t, "epsilon", at), number(t, "q", at));
    if (kind == "isospectral_first")
        return isospectral_first(p, number(t, "epsilon", at), side_of(t));
    if (kind == "delete_two")
        return delete_two(p, integer(t, "i", at));
    if (kind == "create_two")
        return create_two(p, number(t, "eps1", at), number(t, "eps2", at), number(t, "q1", at), number(t, "q2", at));
    if (kind == "iso_two_real")
        return iso_two_real(p, number(t, "eps1", at), number(t, "eps2", at), side_of(t));
    if (kind == "create_one")
        return create_one(p, number(t, "eps1", at), number(t, "q1", at), side_of(t), optional_number(t, "eps2", at));
    if (kind == "move_level") {
        const std::string d = text(t, "direction", at);
        if (d != "up" && d != "down")
            throw ValidationError("expected \"up\" or \"down\"", "transform.direction");
        return move_level(p, integer(t, "i", at), number(t, "target", at), d == "up" ? Direction::up : Direction::down,
                          optional_number(t, "q", at));
    }
    if (kind == "delete_one")
        return delete_one(p, integer(t, "i", at), side_of(t), optional_number(t, "eps1", at));
    if (kind == "iso_complex")
        return iso_complex(p, complex_epsilon(t), side_of(t));
    if (kind == "confluent_create")
        return confluent_create(p, number(t, "epsilon", at), number(t, "w0", at), side_of(t));
    if (kind == "confluent_iso") {
        const std::string v = text(t, "variant", at);
        if (v == "general_w0_zero")
            return confluent_iso(p, number(t, "epsilon", at), ConfluentIsoVariant::general_w0_zero);
        if (v == "mirrored_w0_zero")
            return confluent_iso(p, number(t, "epsilon", at), ConfluentIsoVariant::mirrored_w0_zero);
        if (v == "physical_seed")
            return confluent_iso(p, 0.0, ConfluentIsoVariant::physical_seed, integer(t, "level", at),
                                 number(t, "w0", at));
        throw ValidationError("unknown variant \"" + v + "\"", "transform.variant");
    }
    if (kind == "confluent_delete") {
        const std::string l = text(t, "limit", at);
        if (l != "w0_to_zero" && l != "w0_to_minus_one")
            throw ValidationError("expected \"w0_to_zero\" or \"w0_to_minus_one\"", "transform.limit");
        return confluent_delete(p, integer(t, "i", at),
                                l == "w0_to_zero" ? ConfluentLimit::w0_to_zero : ConfluentLimit::w0_to_minus_one);
    }
    throw ValidationError("unknown case \"" + kind + "\"", "transform.case");
}

json spectrum_json(const JobConfig& cfg, const PartnerPotential& t) {
    const EndpointBehavior c = t.endpoint_coefficients();
    const EndpointBehavior e = t.new_exponents();
    json levels = json::array();
    for (const SpectrumLevel& lv : t.predicted_spectrum(cfg.oracle.levels))
        levels.push_back(level_json(lv));
    json missing = json::array();
    for (const MissingState& m : t.missing_states())
        missing.push_back({{"energy", m.energy},
                           {"exponents", {m.exponents.left, m.exponents.right}},
                           {"physical", m.physical}});
    return {{"case", t.name()},
            {"params", params_json(t.params())},
            {"transform", cfg.transform},
            {"endpoint_coefficients", {{"left", c.left}, {"right", c.right}}},
            {"new_exponents", {{"left", e.left}, {"right", e.right}}},
            {"missing_states", missing},
            {"predicted_spectrum", levels}};
}

void generate(const JobConfig& cfg, const std::filesystem::path& out) {
    const auto t = build_transform(cfg);
    std::filesystem::create_directories(out);
    write_file(out / "potential.csv", potential_csv(*t, cfg.output));
    write_json(out / "spectrum.json", spectrum_json(cfg, *t));
    if (cfg.output.eigenfunctions.empty())
        return;
    int top = 0;
    for (int k : cfg.output.eigenfunctions)
        top = std::max(top, k + 1);
    const std::vector<SpectrumLevel> present = present_levels(t->predicted_spectrum(top));
    std::vector<StateFunction> states;
    std::string csv = "x";
    for (int k : cfg.output.eigenfunctions) {
        states.push_back(t->state(present.at(k)));
        csv += ",psi_" + std::to_string(k);
    }
    csv += "\n";
    for (double x : sample_grid(cfg.output)) {
        csv += format_number(x);
        for (const StateFunction& s : states)
            csv += "," + format_number(s(x));
        csv += "\n";
    }
    write_file(out / "eigenfunctions.csv", csv);
}

VerifyOutcome run_verify(const JobConfig& cfg, const PartnerPotential& t) {
    VerifyOutcome out;
    const std::vector<double> oracle = verify::oracle_spectrum([&t](double x) { return t.value(x); }, cfg.oracle);
    const std::vector<SpectrumLevel> predicted = t.predicted_spectrum(cfg.oracle.levels);
    std::vector<SpectrumLevel> claimed = predicted;
    if (cfg.expected_spectrum) {
        claimed.clear();
        for (double e : *cfg.expected_spectrum)
            claimed.push_back({e, LevelTag::retained, std::nullopt});
    }
    out.report = verify::compare_spectra(claimed, oracle, cfg.rel_tol);
    verify::OracleConfig rcfg = cfg.oracle;
    bool residuals_ok = true;
    const double ceiling = oracle.back() * (1.0 + cfg.rel_tol);
    for (const SpectrumLevel& lv : present_levels(predicted)) {
        if (lv.energy > ceiling)
            continue;
        const StateFunction f = t.state(lv);
        const double r = verify::residual_norm([&t](double x) { return t.value(x); }, f, lv.energy, rcfg);
        out.residuals.push_back({lv.energy, r});
        residuals_ok = residuals_ok && r <= cfg.residual_tol;
    }
    out.pass = out.report.pass && residuals_ok;
    return out;
}

json report_json(const JobConfig& cfg, const PartnerPotential& t, const VerifyOutcome& outcome) {
    const verify::SpectrumReport& r = outcome.report;
    json predicted = json::array();
    for (const SpectrumLevel& lv : r.predicted)
        predicted.push_back(level_json(lv));
    json matched = json::array();
    for (const verify::MatchedLevel& m : r.matched)
        matched.push_back(
            {{"predicted", m.predicted}, {"oracle", m.oracle}, {"rel_error", m.rel_error}, {"tag", to_string(m.tag)}});
    auto levels = [](const std::vector<SpectrumLevel>& v) {
        json a = json::array();
        for (const SpectrumLevel& lv : v)
            a.push_back(level_json(lv));
        return a;
    };
    json residuals = json::array();
    for (const ResidualEntry& e : outcome.residuals)
        residuals.push_back({{"energy", e.energy}, {"residual", e.residual}});
    return {{"case", t.name()},
            {"params", params_json(t.params())},
            {"verdict", outcome.pass ? "pass" : "fail"},
            {"spectrum_verdict", r.pass ? "pass" : "fail"},
            {"rel_tol", r.rel_tol},
            {"residual_tol", cfg.residual_tol},
            {"oracle",
             {{"grid_points", cfg.oracle.grid_points},
              {"guard_delta", cfg.oracle.guard_delta},
              {"levels", cfg.oracle.levels},
              {"richardson", cfg.oracle.richardson},
              {"energies", r.oracle}}},
            {"predicted", predicted},
            {"claimed_override", cfg.expected_spectrum.has_value()},
            {"matched", matched},
            {"unmatched_predicted", levels(r.unmatched_predicted)},
            {"unmatched_oracle", r.unmatched_oracle},
            {"absent_as_expected", levels(r.absent_as_expected)},
            {"present_but_deleted", levels(r.present_but_deleted)},
            {"residuals", residuals}};
}

VerifyOutcome verify_job(const JobConfig& cfg, const std::filesystem::path& out) {
    const auto t = build_transform(cfg);
    const VerifyOutcome outcome = run_verify(cfg, *t);
    std::filesystem::create_directories(out);
    write_json(out / "report.json", report_json(cfg, *t, outcome));
    return outcome;
}

std::vector<FigureCase> figure_cases() {
    return {
        {"fig1_delete_ground", 1, "delete the ground level E_0 = 24.5", make_config(3, 4, {{"case", "delete_ground"}})},
        {"fig1_create_ground", 1, "create a new ground level at 19",
         make_config(3, 4, {{"case", "create_ground"}, {"epsilon", 19.0}, {"q", 1.0}})},
        {"fig1_isospectral", 1, "isospectral first-order partner with eps = 19",
         make_config(3, 4, {{"case", "isospectral_first"}, {"epsilon", 19.0}, {"side", "left"}})},
        {"fig2_delete_two", 2, "delete E_2 = 144.5 and E_3 = 180.5",
         make_config(5, 8, {{"case", "delete_two"}, {"i", 3}})},
        {"fig2_create_two", 2, "create levels at 115.52 and 128",
         make_config(5, 8, {{"case", "create_two"}, {"eps1", 128.0}, {"eps2", 115.52}, {"q1", 1.0}, {"q2", -1.0}})},
        {"fig2_move_level", 2, "move E_2 = 144.5 up to 169.28",
         make_config(5, 8, {{"case", "move_level"}, {"i", 3}, {"target", 169.28}, {"direction", "up"}})},
        {"fig3_iso_complex", 3, "isospectral partner from eps = 176.344 + 1.5i",
         make_config(5, 8,
                     {{"case", "iso_complex"}, {"epsilon", {{"re", 176.344}, {"im", 1.5}}}, {"side", "left"}})},
        {"fig4_confluent_create", 4, "confluent partner creating a level at 147.92",
         make_config(5, 8, {{"case", "confluent_create"}, {"epsilon", 147.92}, {"w0", 1.0}, {"side", "left"}})},
        {"fig4_confluent_iso", 4, "confluent isospectral partner with eps = 162",
         make_config(5, 8, {{"case", "confluent_iso"}, {"epsilon", 162.0}, {"variant", "general_w0_zero"}})},
        {"fig4_confluent_delete", 4, "confluent partner deleting E_3 = 180.5",
         make_config(5, 8, {{"case", "confluent_delete"}, {"i", 3}, {"limit", "w0_to_zero"}})},
    };
}

void figures(const std::filesystem::path& out) {
    std::filesystem::create_directories(out);
    json manifest = {{"cases", json::array()}};
    for (const FigureCase& fc : figure_cases()) {
        const JobConfig cfg = parse_config(fc.config);
        const auto t = build_transform(cfg);
        const std::string file = fc.name + ".csv";
        write_file(out / file, potential_csv(*t, cfg.output));
        json levels = json::array();
        for (const SpectrumLevel& lv : t->predicted_spectrum(cfg.oracle.levels))
            levels.push_back(level_json(lv));
        manifest["cases"].push_back({{"name", fc.name},
                                     {"figure", fc.figure},
                                     {"description", fc.description},
                                     {"file", file},
                                     {"config", fc.config},
                                     {"predicted_spectrum", levels}});
    }
    write_json(out / "manifest.json", manifest);
}

} // namespace ptsusy::jobs
