#include "thinslab/harness.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "thinslab/error.hpp"
#include "thinslab/field_io.hpp"
#include "thinslab/oneway.hpp"
#include "thinslab/quadrature.hpp"
#include "thinslab/registry.hpp"
#include "thinslab/symbol_checks.hpp"

namespace thinslab {

using nlohmann::ordered_json;

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
    std::istringstream is(trim(text));
    is.imbue(std::locale::classic());
    T value{};
    if (!(is >> value) || !(is >> std::ws).eof()) throw ConfigError("option '" + key + "': cannot parse '" + text + "'");
    return value;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace

std::vector<int> parse_ns(const std::string& raw) {
    const std::string text = trim(raw);
    std::vector<int> ns;
    if (const auto dots = text.find(".."); dots != std::string::npos) {
        const int lo = parse_number<int>("Ns", text.substr(0, dots));
        const int hi = parse_number<int>("Ns", text.substr(dots + 2));
        if (lo < 1 || hi < lo) throw ConfigError("Ns range '" + text + "' must satisfy 1 <= lo <= hi");
        for (long n = lo; n <= hi; n *= 2) ns.push_back(int(n));
    } else {
        std::istringstream is(text);
        std::string item;
        while (std::getline(is, item, ',')) ns.push_back(parse_number<int>("Ns", item));
    }
    if (ns.empty()) throw ConfigError("Ns is empty");
    for (std::size_t i = 0; i < ns.size(); ++i) {
        if (ns[i] < 1) throw ConfigError("Ns entries must be positive");
        if (i > 0 && ns[i] <= ns[i - 1]) throw ConfigError("Ns must be strictly increasing");
    }
    return ns;
}

ReferenceMode parse_reference(const std::string& raw) {
    const std::string text = trim(raw);
    if (text == "exact") return ReferenceMode::exact();
    if (text.rfind("finestep:", 0) == 0) {
        const int n = parse_number<int>("reference", text.substr(9));
        if (n < 1) throw ConfigError("finestep reference needs a positive slab count");
        return ReferenceMode::fine_step(n);
    }
    throw ConfigError("reference must be 'exact' or 'finestep:<n>', got '" + text + "'");
}

SlabVariant parse_variant(const std::string& raw) {
    const std::string text = trim(raw);
    if (text == "frozen") return Frozen{};
    if (text == "averaged") return Averaged{};
    if (text.rfind("averaged:", 0) == 0) {
        const int q = parse_number<int>("variant", text.substr(9));
        if (q < 1 || q > kMaxQuadratureOrder) throw ConfigError("averaged quadrature order out of range");
        return Averaged{q};
    }
    throw ConfigError("variant must be 'frozen' or 'averaged[:q]', got '" + text + "'");
}

ReferenceMode ExperimentConfig::effective_reference() const {
    if (reference) return *reference;
    if (find_scenario(scenario).spec.x_independent) return ReferenceMode::exact();
    return ReferenceMode::fine_step(8 * Ns.back());
}

std::map<std::string, std::string> ExperimentConfig::echo() const {
    std::string ns;
    for (int n : Ns) ns += (ns.empty() ? "" : ",") + std::to_string(n);
    std::string variant_text = std::holds_alternative<Frozen>(variant)
                                   ? "frozen"
                                   : "averaged:" + std::to_string(std::get<Averaged>(variant).quadrature_order);
    return {
        {"scenario", scenario},
        {"n_points", std::to_string(grid.n_points)},
        {"period", fmt(grid.period)},
        {"dim", std::to_string(grid.dim)},
        {"s", fmt(s)},
        {"Z", fmt(Z)},
        {"Ns", ns},
        {"variant", variant_text},
        {"reference", reference ? reference->describe() : "auto"},
        {"seed", std::to_string(seed)},
        {"output_dir", output_dir.string()},
        {"norm_points", std::to_string(norm_points)},
        {"max_thickness", fmt(max_thickness)},
    };
}

void set_option(ExperimentConfig& c, const std::string& raw_key, const std::string& value) {
    const std::string key = trim(raw_key);
    if (key == "scenario")
        c.scenario = trim(value);
    else if (key == "n_points")
        c.grid.n_points = parse_number<int>(key, value);
    else if (key == "period")
        c.grid.period = parse_number<double>(key, value);
    else if (key == "dim")
        c.grid.dim = parse_number<int>(key, value);
    else if (key == "s")
        c.s = parse_number<double>(key, value);
    else if (key == "Z")
        c.Z = parse_number<double>(key, value);
    else if (key == "Ns")
        c.Ns = parse_ns(value);
    else if (key == "variant")
        c.variant = parse_variant(value);
    else if (key == "reference")
        c.reference = parse_reference(value);
    else if (key == "seed")
        c.seed = parse_number<std::uint64_t>(key, value);
    else if (key == "output_dir")
        c.output_dir = trim(value);
    else if (key == "norm_points")
        c.norm_points = parse_number<int>(key, value);
    else if (key == "max_thickness")
        c.max_thickness = parse_number<double>(key, value);
    else
        throw ConfigError("unknown option '" + key + "'");
}

void load_config_file(ExperimentConfig& config, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (trim(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": expected 'key = value'");
        set_option(config, line.substr(0, eq), line.substr(eq + 1));
    }
}

void validate(const ExperimentConfig& c) {
    const Scenario& sc = find_scenario(c.scenario);
    try {
        c.grid.validate();
        Grid{c.norm_points, c.grid.period, c.grid.dim}.validate();
    } catch (const GridError& e) {
        throw ConfigError(e.what());
    }
    if (std::size_t(c.norm_points) * (c.grid.dim == 2 ? std::size_t(c.norm_points) : 1) > kMaxMatrixPoints)
        throw ConfigError("norm_points exceeds the dense assembly limit");
    if (!(c.Z > 0.0) || !std::isfinite(c.Z)) throw ConfigError("Z must be positive");
    if (!(c.max_thickness > 0.0)) throw ConfigError("max_thickness must be positive");
    if (c.Ns.empty()) throw ConfigError("Ns is empty");
    for (int n : c.Ns)
        if (c.Z / n > c.max_thickness * (1.0 + 1e-12))
            throw ConfigError("N = " + std::to_string(n) + " gives a slab thicker than max_thickness " +
                              fmt(c.max_thickness));
    const ReferenceMode ref = c.effective_reference();
    if (ref.kind == ReferenceMode::Kind::ExactMultiplier && !sc.spec.x_independent)
        throw ConfigError("exact reference needs an x-independent scenario; '" + c.scenario + "' is x-dependent");
    if (ref.kind == ReferenceMode::Kind::FineStep && ref.n_ref < 8 * c.Ns.back())
        throw ConfigError("finestep reference needs n_ref >= 8 * max(Ns) = " + std::to_string(8 * c.Ns.back()));
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const ConfigError*>(&e)) return kExitConfig;
    if (dynamic_cast<const ConvergenceError*>(&e)) return kExitNonConvergence;
    return kExitFailure;
}

std::string error_json(const std::exception& e) {
    ordered_json j;
    const auto* err = dynamic_cast<const Error*>(&e);
    j["error"]["kind"] = err ? err->kind() : std::string("internal");
    j["error"]["message"] = e.what();
    if (const auto* c = dynamic_cast<const ConvergenceError*>(&e)) {
        j["error"]["last_estimate"] = c->last_estimate();
        j["error"]["iterations"] = c->iterations();
    }
    j["error"]["exit_code"] = exit_code_for(e);
    return j.dump();
}

namespace {

struct PropertyResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("io", "cannot write " + path.string());
    return out;
}

void write_convergence(const std::filesystem::path& dir, const ConvergenceReport& r, const ExperimentConfig& c) {
    {
        std::ofstream csv = open_output(dir / "convergence.csv");
        csv << "N,delta,error_Hs,normalized_error\n";
        for (std::size_t i = 0; i < r.Ns.size(); ++i)
            csv << r.Ns[i] << ',' << fmt(r.deltas[i]) << ',' << fmt(r.errors[i]) << ',' << fmt(r.normalized_errors[i])
                << '\n';
    }
    ordered_json j;
    j["scenario"] = r.scenario;
    j["variant"] = r.variant;
    j["s"] = r.s;
    j["Z"] = r.Z;
    j["reference_kind"] = r.reference.kind == ReferenceMode::Kind::ExactMultiplier ? "exact" : "finestep";
    j["n_ref"] = r.reference.n_ref;
    j["exact"] = r.exact;
    j["slope"] = r.fitted_slope ? ordered_json(*r.fitted_slope) : ordered_json(nullptr);
    j["residual"] = r.fit_residual;
    j["dropped_coarse"] = r.dropped_coarse;
    j["reference_self_error"] = r.reference_self_error ? ordered_json(*r.reference_self_error) : ordered_json(nullptr);
    j["Ns"] = r.Ns;
    j["deltas"] = r.deltas;
    j["errors"] = r.errors;
    j["normalized_errors"] = r.normalized_errors;
    j["config"] = c.echo();
    std::ofstream out = open_output(dir / "convergence.json");
    out << j.dump(2) << '\n';
}

std::vector<double> sweep_deltas() {
    std::vector<double> d;
    for (int k = 4; k <= 9; ++k) d.push_back(std::ldexp(1.0, -k));
    return d;
}

void write_properties(const std::filesystem::path& path, const std::string& scenario,
                      const std::vector<PropertyResult>& props) {
    auto escape = [](const std::string& s) {
        std::string o;
        for (char ch : s) {
            switch (ch) {
                case '&': o += "&amp;"; break;
                case '<': o += "&lt;"; break;
                case '>': o += "&gt;"; break;
                case '"': o += "&quot;"; break;
                default: o += ch;
            }
        }
        return o;
    };
    const auto failures = std::count_if(props.begin(), props.end(), [](const PropertyResult& p) { return !p.pass; });
    std::ofstream out = open_output(path);
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<testsuite name=\"" << escape(scenario) << "\" tests=\"" << props.size() << "\" failures=\"" << failures
        << "\">\n";
    for (const PropertyResult& p : props) {
        out << "  <testcase classname=\"" << escape(scenario) << "\" name=\"" << escape(p.name) << "\"";
        if (p.pass) {
            out << ">\n    <system-out>" << escape(p.detail) << "</system-out>\n  </testcase>\n";
        } else {
            out << ">\n    <failure message=\"" << escape(p.detail) << "\"/>\n  </testcase>\n";
        }
    }
    out << "</testsuite>\n";
}

// Demo: snapshots at every slab endpoint and the energy partition per depth.
std::vector<PropertyResult> run_demo(const Scenario& sc, const ExperimentConfig& c, const std::filesystem::path& dir) {
    const OnewayDemo& demo = *sc.demo;
    const Field u0 = demo_datum(c.grid, demo.aperture);
    const int slabs = c.Ns.back();
    const std::filesystem::path snap_dir = dir / "snapshots";
    std::filesystem::create_directories(snap_dir);

    std::ofstream csv = open_output(dir / "energy.csv");
    csv << "depth,energy_inside,energy_between,energy_outside\n";
    auto record = [&](int k, double z, const Field& u) {
        char name[32];
        std::snprintf(name, sizeof name, "depth_%04d.tslb", k);
        write_field(snap_dir / name, u);
        const EnergyPartition e = partition_energy(u, demo.medium, demo.aperture);
        csv << fmt(z) << ',' << fmt(e.inside) << ',' << fmt(e.between) << ',' << fmt(e.outside) << '\n';
    };
    record(0, 0.0, u0);
    const PropagatorConfig pconf{c.max_thickness};
    const Field uz = downward_continue(demo.medium, demo.aperture, u0, c.Z, slabs, c.variant, record, pconf);

    const EnergyPartition e0 = partition_energy(u0, demo.medium, demo.aperture);
    const EnergyPartition ez = partition_energy(uz, demo.medium, demo.aperture);
    std::vector<PropertyResult> props;
    if (demo.aperture.damping_scale > 0.0) {
        const double outside = ez.outside / e0.outside;
        props.push_back({"demo-outside-suppressed", outside < 0.1, "outside energy ratio " + fmt(outside)});
    }
    const double inside = ez.inside / e0.inside;
    props.push_back({"demo-inside-preserved", std::abs(inside - 1.0) < 0.05, "inside energy ratio " + fmt(inside)});
    return props;
}

}  // namespace

int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
    const Stopwatch total;
    ordered_json manifest;
    manifest["version"] = kVersion;
    manifest["config"] = config.echo();
    ordered_json timings = ordered_json::object();
    ordered_json outputs = ordered_json::array();
    int code = kExitOk;
    bool dir_ready = false;

    try {
        validate(config);
        std::error_code ec;
        std::filesystem::create_directories(config.output_dir, ec);
        if (ec || !std::filesystem::is_directory(config.output_dir))
            throw Error("io", "cannot create output directory " + config.output_dir.string());
        dir_ready = true;

        const Scenario& sc = find_scenario(config.scenario);
        const PropagatorConfig pconf{config.max_thickness};
        const ReferenceMode reference = config.effective_reference();
        const Field u0 = sc.demo ? demo_datum(config.grid, sc.demo->aperture) : default_packet(config.grid);
        std::vector<PropertyResult> props;

        const auto violations = validate(sc.spec, config.Z, config.grid.dim);
        {
            std::string detail = violations.empty() ? "no violations" : violations.front();
            props.push_back({"symbol-admissible", violations.empty(), detail});
        }

        Stopwatch watch;
        const ConvergenceReport report =
            convergence_study(sc.spec, u0, config.s, config.Ns, config.variant, reference, config.Z, pconf);
        write_convergence(config.output_dir, report, config);
        outputs.push_back("convergence.csv");
        outputs.push_back("convergence.json");
        timings["convergence"] = watch.seconds();
        if (report.exact) {
            props.push_back({"convergence-rate", true, "exact: all normalized errors below " + fmt(kExactThreshold)});
        } else if (!report.fitted_slope) {
            props.push_back({"convergence-rate", true, "slope fit skipped: an error vanished"});
        } else {
            const bool hoelder = sc.spec.z_regularity.kind == ZRegularityKind::Hoelder;
            const double need = hoelder ? 0.2 : 0.45;
            props.push_back({"convergence-rate", *report.fitted_slope >= need,
                             "fitted slope " + fmt(*report.fitted_slope) + ", required " + fmt(need)});
            props.push_back({"errors-monotone", report.monotone(0.05), "nonincreasing within 5%"});
        }

        watch = Stopwatch();
        const Grid norm_grid{config.norm_points, config.grid.period, config.grid.dim};
        {
            std::ofstream csv = open_output(config.output_dir / "norm_sweep.csv");
            csv << "s,delta,norm,growth\n";
            for (double s : {0.0, 1.0}) {
                const NormSweep sweep = norm_sweep(sc.spec, norm_grid, s, sweep_deltas(), 0.0, config.variant, pconf);
                for (const NormSweepPoint& p : sweep.points)
                    csv << fmt(s) << ',' << fmt(p.delta) << ',' << fmt(p.norm) << ',' << fmt(p.growth) << '\n';
                const bool ok = sweep.contractive || sweep.growth_ratio <= 3.0;
                props.push_back({"norm-bound-s" + fmt(s), ok,
                                 sweep.contractive ? "contractive" : "growth ratio " + fmt(sweep.growth_ratio)});
            }
        }
        outputs.push_back("norm_sweep.csv");
        timings["norm_sweep"] = watch.seconds();

        watch = Stopwatch();
        {
            const auto family = packet_family(config.grid, 3, config.seed);
            const UniformBoundReport ub =
                uniform_bound_check(sc.spec, family, config.s, config.Ns, config.Z, config.variant, pconf);
            const bool ok = ub.sup_ratio <= 1.0 + kContractionSlack || ub.spread() < 0.05;
            props.push_back({"uniform-bound", ok, "sup ratio " + fmt(ub.sup_ratio) + ", spread " + fmt(ub.spread())});
        }
        timings["uniform_bound"] = watch.seconds();

        if (sc.demo) {
            watch = Stopwatch();
            auto demo_props = run_demo(sc, config, config.output_dir);
            props.insert(props.end(), demo_props.begin(), demo_props.end());
            outputs.push_back("energy.csv");
            outputs.push_back("snapshots/");
            timings["demo"] = watch.seconds();
        }

        write_properties(config.output_dir / "properties.xml", sc.key, props);
        outputs.push_back("properties.xml");

        ordered_json summary = ordered_json::array();
        for (const PropertyResult& p : props) {
            summary.push_back({{"name", p.name}, {"pass", p.pass}, {"detail", p.detail}});
            out << (p.pass ? "PASS " : "FAIL ") << p.name << ": " << p.detail << '\n';
            if (!p.pass) code = kExitThreshold;
        }
        manifest["properties"] = summary;
        manifest["status"] = code == kExitOk ? "ok" : "threshold-violation";
    } catch (const std::exception& e) {
        code = exit_code_for(e);
        err << error_json(e) << '\n';
        manifest["status"] = "failed";
        manifest["failure"] = {{"kind", dynamic_cast<const Error*>(&e) ? dynamic_cast<const Error&>(e).kind()
                                                                       : std::string("internal")},
                               {"message", e.what()}};
    }

    timings["total"] = total.seconds();
    manifest["exit_code"] = code;
    manifest["outputs"] = outputs;
    manifest["timings"] = timings;
    if (!dir_ready) {
        std::error_code ec;
        std::filesystem::create_directories(config.output_dir, ec);
    }
    std::ofstream mf(config.output_dir / "manifest.json", std::ios::binary);
    if (mf) {
        mf << manifest.dump(2) << '\n';
    } else {
        err << R"({"error":{"kind":"io","message":"cannot write manifest.json"}})" << '\n';
        if (code == kExitOk) code = kExitFailure;
    }
    return code;
}

void list_scenarios(std::ostream& out, bool json) {
    if (json) {
        ordered_json j = ordered_json::array();
        for (const Scenario& s : scenarios())
            j.push_back({{"key", s.key},
                         {"z_regularity", to_string(s.spec.z_regularity)},
                         {"x_independent", s.spec.x_independent},
                         {"z_independent", s.spec.z_independent},
                         {"demo", s.demo.has_value()},
                         {"description", s.description},
                         {"anchor", s.anchor}});
        out << j.dump(2) << '\n';
        return;
    }
    out << std::left << std::setw(20) << "key" << std::setw(14) << "z-regularity" << std::setw(8) << "flags"
        << "description / property\n";
    for (const Scenario& s : scenarios()) {
        std::string flags;
        flags += s.spec.x_independent ? 'x' : '-';
        flags += s.spec.z_independent ? 'z' : '-';
        flags += s.demo ? 'd' : '-';
        out << std::left << std::setw(20) << s.key << std::setw(14) << to_string(s.spec.z_regularity) << std::setw(8)
            << flags << s.description << '\n'
            << std::setw(42) << "" << "property: " << s.anchor << '\n';
    }
}

int check(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
    try {
        validate(config);
        const Scenario& sc = find_scenario(config.scenario);
        int code = kExitOk;
        const auto violations = validate(sc.spec, config.Z, config.grid.dim);
        for (const std::string& v : violations) out << "FAIL " << v << '\n';
        if (!violations.empty()) code = kExitThreshold;
        if (violations.empty()) out << "PASS symbol invariants\n";
        if (sc.spec.c1) {
            LatticeSpec lattice;
            lattice.dim = config.grid.dim;
            const PLReport pl = check_PL(freeze(sc.spec.c1, 0.0), 2, lattice);
            out << (pl.pass ? "PASS" : "FAIL") << " P_L(L=2) on c1: worst ratio " << fmt(pl.worst_ratio) << '\n';
            if (!pl.pass) code = kExitThreshold;
        }
        out << "reference " << config.effective_reference().describe() << ", regularity "
            << to_string(sc.spec.z_regularity) << '\n';
        return code;
    } catch (const std::exception& e) {
        err << error_json(e) << '\n';
        return exit_code_for(e);
    }
}

}  // namespace thinslab
