#include "cli.hpp"

#include "groundbound/billiard.hpp"
#include "groundbound/coulomb.hpp"
#include "groundbound/magnetic.hpp"
#include "groundbound/oracle.hpp"
#include "groundbound/polynomial.hpp"
#include "groundbound/quartic.hpp"
#include "groundbound/refine.hpp"
#include "groundbound/search.hpp"
#include "groundbound/simple_systems.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include <unistd.h>

namespace groundbound::cli {

using json = nlohmann::ordered_json;

std::string format_number(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "+inf" : "-inf";
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) {
        return s;
    }
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') {
            q += '"';
        }
        q += c;
    }
    return q + '"';
}

namespace {

class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

json num(double v) {
    if (std::isfinite(v)) {
        return v;
    }
    return format_number(v);
}

struct SystemInfo {
    std::string id;
    std::vector<std::pair<std::string, double>> params; // flag name and default
    std::vector<std::string> variants;                  // first is the default
    bool one_dimensional = false;
    bool even = false;
};

const std::vector<SystemInfo> &registry() {
    static const std::vector<SystemInfo> systems = {
        {"annular-billiard", {{"r", 0.75}, {"delta", 0.1}}, {"plain"}, false, false},
        {"disk", {}, {"barta", "plain"}, false, false},
        {"helium", {{"Z", 2.0}}, {"analytic", "search"}, false, false},
        {"magnetic-hydrogen", {{"B", 1.0}}, {"trivial", "lower", "upper", "improved"}, false, false},
        {"quartic", {{"rr", 1.0 / std::sqrt(2.0)}, {"eta", -1.0}, {"delta2", 8.0}}, {"s0"}, true, true},
        {"hydrogen", {}, {"exact"}, true, false},
        {"harmonic", {}, {"exact"}, true, true},
    };
    return systems;
}

const SystemInfo &find_system(const std::string &id) {
    for (const auto &s : registry()) {
        if (s.id == id) {
            return s;
        }
    }
    std::string known;
    for (const auto &s : registry()) {
        known += (known.empty() ? "" : ", ") + s.id;
    }
    throw UsageError("unknown system '" + id + "' (known: " + known + ")");
}

struct Spec {
    std::string command;
    const SystemInfo *system = nullptr;
    std::string variant;
    std::map<std::string, double> params;
    SearchConfig search;
    bool grid_given = false;
    std::vector<double> box;
    std::string format;
    std::string out;
    std::optional<std::string> centers;
    double sigma = 1.0;
    std::string sweep_param;
    std::vector<double> sweep_values;
    std::string singular = "limit";
    bool timing = false;
};

std::vector<double> parse_list(const std::string &text, const std::string &what) {
    std::vector<double> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (item.empty()) {
            continue;
        }
        try {
            std::size_t used = 0;
            v.push_back(std::stod(item, &used));
            if (used != item.size()) {
                throw std::invalid_argument(item);
            }
        } catch (const std::exception &) {
            throw UsageError("cannot parse '" + item + "' in " + what);
        }
    }
    return v;
}

std::vector<Interval> box_of(const Spec &spec, std::size_t dim, std::vector<Interval> fallback) {
    if (spec.box.empty()) {
        return fallback;
    }
    if (spec.box.size() != 2 * dim) {
        throw UsageError("--box needs " + std::to_string(2 * dim) + " numbers for this system");
    }
    std::vector<Interval> b;
    for (std::size_t i = 0; i < dim; ++i) {
        if (!(spec.box[2 * i] < spec.box[2 * i + 1])) {
            throw UsageError("--box intervals must satisfy lo < hi");
        }
        b.push_back({spec.box[2 * i], spec.box[2 * i + 1]});
    }
    return b;
}

double param(const Spec &spec, const std::string &name) { return spec.params.at(name); }

int eta_of(const Spec &spec) {
    const double e = param(spec, "eta");
    if (e != 1.0 && e != -1.0) {
        throw InvalidArgument("quartic: eta must be +1 or -1");
    }
    return static_cast<int>(e);
}

QuarticOscillator quartic_of(const Spec &spec) {
    return QuarticOscillator(param(spec, "rr"), eta_of(spec), param(spec, "delta2"));
}

BartaPair disk_pair() {
    const auto out = barta_polynomial_construction(unit_disk_boundary(), 2, {{-1.0, 1.0}, {-1.0, 1.0}});
    if (!out.solution) {
        throw NumericalFailure("disk construction failed: " + out.diagnostic);
    }
    return *out.solution;
}

//! The single-trial field selected by the spec.
LocalEnergyField field_of(const Spec &spec) {
    const std::string &id = spec.system->id;
    if (id == "annular-billiard") {
        return billiard_local_energy_field(AnnularBilliard(param(spec, "r"), param(spec, "delta")));
    }
    if (id == "disk") {
        const std::vector<Interval> box{{-1.0, 1.0}, {-1.0, 1.0}};
        if (spec.variant == "plain") {
            return plain_polynomial_billiard_field(unit_disk_boundary(), box, kInf, kInf);
        }
        return barta_local_energy_field(unit_disk_boundary(), disk_pair(), box);
    }
    if (id == "helium") {
        return coulomb_local_energy_field(helium_like(param(spec, "Z")));
    }
    if (id == "magnetic-hydrogen") {
        if (spec.variant == "trivial") {
            throw UsageError("variant 'trivial' combines two trials; choose lower, upper or improved");
        }
        return magnetic_hydrogen_field(MagneticHydrogen(param(spec, "B")), magnetic_variant_from_string(spec.variant));
    }
    if (id == "quartic") {
        return quartic_system(quartic_of(spec)).field();
    }
    if (id == "hydrogen") {
        return radial_hydrogen(1.0).field();
    }
    return harmonic_oscillator(1.0).field();
}

SearchConfig search_of(const Spec &spec, std::size_t dim, const std::vector<Interval> &default_box) {
    SearchConfig cfg = spec.search;
    cfg.box = box_of(spec, dim, default_box);
    cfg.validate();
    return cfg;
}

BoundsResult bounds_of(const Spec &spec) {
    const std::string &id = spec.system->id;
    if (id == "helium" && spec.variant == "analytic") {
        return helium_bounds(param(spec, "Z"));
    }
    if (id == "magnetic-hydrogen" && spec.variant == "trivial") {
        const MagneticHydrogen mh(param(spec, "B"));
        const auto lo_field = magnetic_hydrogen_field(mh, MagneticVariant::lower);
        const auto up_field = magnetic_hydrogen_field(mh, MagneticVariant::upper);
        const SearchConfig cfg = search_of(spec, 2, lo_field.default_box());
        BoundsResult lo = bounds(lo_field, cfg);
        const BoundsResult up = bounds(up_field, cfg);
        lo.upper = up.upper;
        lo.upper_witness = up.upper_witness;
        return lo;
    }
    const LocalEnergyField f = field_of(spec);
    return bounds(f, search_of(spec, f.dimension(), f.default_box()));
}

std::string origin_name(ExtremumOrigin o) {
    switch (o) {
    case ExtremumOrigin::interior:
        return "interior";
    case ExtremumOrigin::singular_limit:
        return "singular_limit";
    case ExtremumOrigin::asymptotic_limit:
        return "asymptotic_limit";
    }
    return "interior";
}

json witness_json(const ExtremumReport &r) {
    json loc = json::array();
    for (double c : r.location.coords) {
        loc.push_back(num(c));
    }
    return json{{"location", loc},
                {"value", num(r.value)},
                {"gradient_norm", num(r.gradient_norm)},
                {"origin", origin_name(r.origin)},
                {"detail", r.origin_detail},
                {"constrained", r.constrained},
                {"evaluations", r.evaluations}};
}

json system_json(const Spec &spec) {
    json params = json::object();
    for (const auto &[name, def] : spec.system->params) {
        params[name] = param(spec, name);
    }
    return json{{"id", spec.system->id}, {"variant", spec.variant}, {"parameters", params}};
}

std::string join_location(const Point &p) {
    std::string s;
    for (std::size_t i = 0; i < p.size(); ++i) {
        s += (i ? ";" : "") + format_number(p[i]);
    }
    return s;
}

struct Document {
    std::string text;
    int code = kSuccess;
};

Document cmd_bounds(const Spec &spec) {
    const auto t0 = std::chrono::steady_clock::now();
    const BoundsResult b = bounds_of(spec);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    Document doc;
    doc.code = b.finite() ? kSuccess : kUnbounded;
    if (spec.format == "csv") {
        doc.text = "system,variant,lower,upper,lower_location,upper_location\n" + csv_field(spec.system->id) + "," +
                   csv_field(spec.variant) + "," + format_number(b.lower) + "," + format_number(b.upper) + "," +
                   csv_field(join_location(b.lower_witness.location)) + "," +
                   csv_field(join_location(b.upper_witness.location)) + "\n";
        return doc;
    }
    const auto &c = b.resolution_caveat;
    json box = json::array();
    for (const auto &iv : c.box) {
        box.push_back(json::array({num(iv.lo), num(iv.hi)}));
    }
    json j{{"schema", "groundbound.bounds/1"},
           {"system", system_json(spec)},
           {"lower", num(b.lower)},
           {"upper", num(b.upper)},
           {"analytic", b.analytic},
           {"witnesses", {{"lower", witness_json(b.lower_witness)}, {"upper", witness_json(b.upper_witness)}}},
           {"resolution_caveat",
            {{"grid_points_per_axis", c.grid_points_per_axis},
             {"refinement_levels", c.refinement_levels},
             {"multistart_count", c.multistart_count},
             {"final_step", num(c.final_step)},
             {"box", box}}},
           {"seed", spec.search.rng_seed}};
    if (spec.timing) {
        j["wall_time"] = wall;
    }
    doc.text = j.dump(2) + "\n";
    return doc;
}

Document cmd_refine(const Spec &spec) {
    if (!spec.system->one_dimensional) {
        throw UsageError("refine needs a one-dimensional system (quartic, harmonic or hydrogen)");
    }
    TrialSystem base = spec.system->id == "quartic"    ? quartic_system(quartic_of(spec))
                       : spec.system->id == "hydrogen" ? radial_hydrogen(1.0)
                                                       : harmonic_oscillator(1.0);
    std::vector<double> centers = spec.centers ? parse_list(*spec.centers, "--centers") : default_quartic_centers();
    if (!(spec.sigma > 0.0)) {
        throw UsageError("--sigma must be positive");
    }
    SearchConfig cfg = refine_search_config(spec.search.rng_seed);
    if (spec.grid_given) {
        cfg.grid_points_per_axis = spec.search.grid_points_per_axis;
    }
    cfg.refinement_levels = spec.search.refinement_levels;
    cfg.multistart_count = spec.search.multistart_count;
    cfg.box = box_of(spec, 1, base.box);
    cfg.validate();
    const RefinementState st = refine_schedule(std::move(base), centers, spec.sigma, cfg, spec.system->even);

    Document doc;
    if (spec.format == "json") {
        json rows = json::array();
        for (const auto &r : st.bound_history) {
            rows.push_back({{"step", r.step},
                            {"center", r.center ? json(*r.center) : json(nullptr)},
                            {"amplitude", r.amplitude},
                            {"lower_bound", num(r.lower)}});
        }
        json j{{"schema", "groundbound.refine/1"}, {"system", system_json(spec)}, {"sigma", spec.sigma},
               {"mirror", st.mirror},           {"seed", spec.search.rng_seed}, {"rows", rows},
               {"final_lower", num(st.current_lower)}};
        doc.text = j.dump(2) + "\n";
        return doc;
    }
    doc.text = "step,center,amplitude,lower_bound\n";
    for (const auto &r : st.bound_history) {
        doc.text += std::to_string(r.step) + "," + (r.center ? format_number(*r.center) : "") + "," +
                    format_number(r.amplitude) + "," + format_number(r.lower) + "\n";
    }
    return doc;
}

Document cmd_sweep(const Spec &spec) {
    const auto &ps = spec.system->params;
    if (std::none_of(ps.begin(), ps.end(), [&](const auto &p) { return p.first == spec.sweep_param; })) {
        throw UsageError("system '" + spec.system->id + "' has no sweepable parameter '" + spec.sweep_param + "'");
    }
    Document doc;
    json rows = json::array();
    std::string csv = csv_field(spec.sweep_param) + ",lower,upper\n";
    for (double v : spec.sweep_values) {
        Spec s = spec;
        s.params[spec.sweep_param] = v;
        const BoundsResult b = bounds_of(s);
        if (!b.finite()) {
            doc.code = kUnbounded;
        }
        rows.push_back({{"value", v}, {"lower", num(b.lower)}, {"upper", num(b.upper)}});
        csv += format_number(v) + "," + format_number(b.lower) + "," + format_number(b.upper) + "\n";
    }
    if (spec.format == "json") {
        json j{{"schema", "groundbound.sweep/1"},
               {"system", system_json(spec)},
               {"parameter", spec.sweep_param},
               {"seed", spec.search.rng_seed},
               {"rows", rows}};
        doc.text = j.dump(2) + "\n";
    } else {
        doc.text = csv;
    }
    return doc;
}

std::vector<std::string> coordinate_names(const LocalEnergyField &f) {
    switch (f.domain().coordinates) {
    case CoordinateSystem::cylindrical:
        return {"rho", "z"};
    case CoordinateSystem::radial:
        return {"r"};
    case CoordinateSystem::cartesian:
        break;
    }
    if (f.dimension() == 1) {
        return {"q"};
    }
    return {"x", "y"};
}

Document cmd_field(const Spec &spec) {
    const LocalEnergyField f = field_of(spec);
    const std::size_t dim = f.dimension();
    if (dim > 2) {
        throw UsageError("field dumps need a 1D or 2D system");
    }
    if (spec.singular != "limit" && spec.singular != "nan") {
        throw UsageError("--singular must be 'limit' or 'nan'");
    }
    const auto box = box_of(spec, dim, f.default_box());
    const std::size_t n = spec.grid_given ? spec.search.grid_points_per_axis : 201;
    if (n < 2) {
        throw UsageError("--grid-n must be at least 2 for field dumps");
    }
    const auto names = coordinate_names(f);
    std::vector<std::vector<double>> rows;
    std::vector<std::size_t> idx(dim, 0);
    std::size_t total = 1;
    for (std::size_t i = 0; i < dim; ++i) {
        total *= n;
    }
    std::vector<double> q(dim);
    for (std::size_t k = 0; k < total; ++k) {
        std::size_t r = k;
        // First coordinate varies slowest.
        for (std::size_t i = dim; i-- > 0;) {
            const std::size_t j = r % n;
            r /= n;
            q[i] = box[i].lo + box[i].width() * static_cast<double>(j) / static_cast<double>(n - 1);
        }
        if (!f.domain().interior(q)) {
            continue;
        }
        double e = std::numeric_limits<double>::quiet_NaN();
        if (const SingularSet *s = f.domain().singular_at(q)) {
            if (spec.singular == "limit") {
                if (s->continuation) {
                    e = s->continuation(q);
                } else if (s->inf_limit && s->sup_limit && *s->inf_limit == *s->sup_limit) {
                    e = *s->inf_limit;
                }
            }
        } else {
            try {
                e = f(q);
            } catch (const SingularEvaluation &) {
            }
        }
        std::vector<double> row(q);
        row.push_back(e);
        rows.push_back(std::move(row));
    }
    Document doc;
    if (spec.format == "json") {
        json cols = json::array();
        for (const auto &c : names) {
            cols.push_back(c);
        }
        cols.push_back("E_loc");
        json jr = json::array();
        for (const auto &row : rows) {
            json a = json::array();
            for (double v : row) {
                a.push_back(num(v));
            }
            jr.push_back(a);
        }
        json j{{"schema", "groundbound.field/1"}, {"system", system_json(spec)}, {"columns", cols}, {"rows", jr}};
        doc.text = j.dump() + "\n";
        return doc;
    }
    std::string text;
    for (const auto &c : names) {
        text += c + ",";
    }
    text += "E_loc\n";
    for (const auto &row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            text += (i ? "," : "") + format_number(row[i]);
        }
        text += "\n";
    }
    doc.text = std::move(text);
    return doc;
}

Document cmd_oracle(const Spec &spec) {
    const std::string &id = spec.system->id;
    OracleEstimate e;
    if (spec.system->one_dimensional) {
        ScalarField V;
        Grid1D g;
        Oracle1DOptions opt;
        if (id == "quartic") {
            const QuarticOscillator qo = quartic_of(spec);
            V = [qo](std::span<const double> q) { return qo.potential(q[0]); };
            g = {-8.0, 8.0, 2000};
        } else if (id == "hydrogen") {
            V = [](std::span<const double> q) { return -1.0 / q[0]; };
            g = {0.0, 40.0, 4000};
            opt.left_wall = true;
        } else {
            V = [](std::span<const double> q) { return 0.5 * q[0] * q[0]; };
            g = {-10.0, 10.0, 2000};
        }
        const auto box = box_of(spec, 1, {{g.x_min, g.x_max}});
        g.x_min = box[0].lo;
        g.x_max = box[0].hi;
        if (spec.grid_given) {
            g.n = spec.search.grid_points_per_axis;
        }
        e = solve_1d_ground_state(V, g, opt);
    } else if (id == "annular-billiard" || id == "disk") {
        Domain d;
        std::vector<Interval> box;
        std::size_t n = 0;
        if (id == "disk") {
            d = plain_polynomial_billiard_field(unit_disk_boundary(), {{-1.0, 1.0}, {-1.0, 1.0}}, kInf, kInf).domain();
            box = {{-1.0, 1.0}, {-1.0, 1.0}};
            n = 200;
        } else {
            const AnnularBilliard ab(param(spec, "r"), param(spec, "delta"));
            d = ab.domain();
            box = ab.box();
            n = 400;
        }
        box = box_of(spec, 2, box);
        Grid2D g{box[0], box[1], spec.grid_given ? spec.search.grid_points_per_axis : n};
        e = solve_2d_dirichlet_ground_state(d, g);
    } else {
        throw UsageError("no oracle for system '" + id + "'");
    }
    Document doc;
    if (spec.format == "csv") {
        doc.text = "system,value,error_bar,coarse,fine,coarse_n,fine_n\n" + csv_field(id) + "," +
                   format_number(e.value) + "," + format_number(e.error_bar) + "," + format_number(e.coarse) + "," +
                   format_number(e.fine) + "," + std::to_string(e.coarse_n) + "," + std::to_string(e.fine_n) + "\n";
        return doc;
    }
    json j{{"schema", "groundbound.oracle/1"},
           {"system", system_json(spec)},
           {"value", e.value},
           {"error_bar", e.error_bar},
           {"coarse", e.coarse},
           {"fine", e.fine},
           {"coarse_n", e.coarse_n},
           {"fine_n", e.fine_n},
           {"retries", e.retries},
           {"edge_ratio", e.edge_ratio},
           {"range", json::array({e.x_range.lo, e.x_range.hi})}};
    doc.text = j.dump(2) + "\n";
    return doc;
}

void write_atomic(const std::string &path, const std::string &text) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) {
            throw UsageError("cannot open '" + tmp.string() + "' for writing");
        }
        f << text;
        f.flush();
        if (!f) {
            fs::remove(tmp);
            throw UsageError("failed writing '" + tmp.string() + "'");
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw UsageError("cannot move output into place: " + ec.message());
    }
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Rigorous ground-state energy bounds from local energies", "groundbound"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Flat key = value file; command-line flags take precedence");

    std::string system, variant, format, out_path, box_text, centers_text, values_text, sweep_param;
    std::string singular = "limit";
    std::map<std::string, double> values;
    for (const char *p : {"r", "delta", "Z", "B", "eta", "delta2", "rr"}) {
        values[p] = 0.0;
    }
    SearchConfig search;
    double sigma = 1.0;
    bool timing = false;

    app.add_option("--system", system, "System id")->required();
    app.add_option("--variant", variant, "Trial variant (system specific)");
    app.add_option("--r", values["r"], "Annulus inner radius");
    app.add_option("--delta", values["delta"], "Annulus center offset");
    app.add_option("--Z", values["Z"], "Nuclear charge");
    app.add_option("--B", values["B"], "Magnetic field strength");
    app.add_option("--eta", values["eta"], "Quartic sign (+1 or -1)");
    app.add_option("--delta2", values["delta2"], "Quartic delta^2");
    app.add_option("--rr", values["rr"], "Quartic r");
    app.add_option("--grid-n", search.grid_points_per_axis, "Grid points per axis");
    app.add_option("--levels", search.refinement_levels, "Zoom refinement levels");
    app.add_option("--multistarts", search.multistart_count, "Multistart count");
    app.add_option("--box", box_text, "Search/dump box as lo,hi[,lo,hi...]");
    app.add_option("--seed", search.rng_seed, "Random seed");
    app.add_option("--centers", centers_text, "Refinement centers, comma separated");
    app.add_option("--sigma", sigma, "Refinement bump width");
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", out_path, "Output file (written atomically)");
    app.add_option("--param", sweep_param, "Sweep parameter name");
    app.add_option("--values", values_text, "Sweep values, comma separated");
    app.add_option("--singular", singular, "Field dump at singular points: limit or nan");
    app.add_flag("--timing", timing, "Include wall time in bounds output");

    std::string command;
    for (const char *name : {"bounds", "refine", "sweep", "field", "oracle"}) {
        static const std::map<std::string, std::string> help = {
            {"bounds", "Lower and upper bounds from inf/sup of the local energy"},
            {"refine", "Gaussian-bump refinement of a 1D lower bound"},
            {"sweep", "Bounds over a list of parameter values"},
            {"field", "Dump the local energy on a grid"},
            {"oracle", "Finite-difference reference ground-state energy"}};
        app.add_subcommand(name, help.at(name))->fallthrough()->callback([&command, name] { command = name; });
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }

    try {
        Spec spec;
        spec.command = command;
        spec.system = &find_system(system);
        const auto &vs = spec.system->variants;
        spec.variant = variant.empty() ? vs.front() : variant;
        if (std::find(vs.begin(), vs.end(), spec.variant) == vs.end()) {
            throw UsageError("system '" + system + "' has no variant '" + spec.variant + "'");
        }
        for (const auto &[name, value] : values) {
            const auto &ps = spec.system->params;
            const bool applies = std::any_of(ps.begin(), ps.end(), [&](const auto &p) { return p.first == name; });
            if (app.count("--" + name) > 0 && !applies) {
                throw UsageError("--" + name + " does not apply to system '" + system + "'");
            }
        }
        for (const auto &[name, def] : spec.system->params) {
            spec.params[name] = app.count("--" + name) > 0 ? values[name] : def;
        }
        spec.search = search;
        spec.grid_given = app.count("--grid-n") > 0;
        spec.box = parse_list(box_text, "--box");
        spec.format = format.empty() ? (command == "bounds" || command == "oracle" ? "json" : "csv") : format;
        spec.out = out_path;
        if (app.count("--centers") > 0) {
            spec.centers = centers_text;
        }
        spec.sigma = sigma;
        spec.singular = singular;
        spec.timing = timing;
        if (command == "sweep") {
            if (sweep_param.empty()) {
                throw UsageError("sweep needs --param");
            }
            spec.sweep_param = sweep_param;
            spec.sweep_values = parse_list(values_text, "--values");
        }

        Document doc;
        if (command == "bounds") {
            doc = cmd_bounds(spec);
        } else if (command == "refine") {
            doc = cmd_refine(spec);
        } else if (command == "sweep") {
            doc = cmd_sweep(spec);
        } else if (command == "field") {
            doc = cmd_field(spec);
        } else {
            doc = cmd_oracle(spec);
        }
        if (spec.out.empty()) {
            out << doc.text;
        } else {
            write_atomic(spec.out, doc.text);
        }
        if (doc.code == kUnbounded) {
            err << "note: at least one bound is infinite\n";
        }
        return doc.code;
    } catch (const UsageError &e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const InvalidArgument &e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception &e) {
        err << "numerical failure: " << e.what() << "\n";
        return kNumerical;
    }
}

} // namespace groundbound::cli
