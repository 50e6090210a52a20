#include "fluxcat/cli.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fluxcat/catalog.hpp"
#include "fluxcat/errors.hpp"
#include "fluxcat/format.hpp"
#include "fluxcat/lattice.hpp"
#include "fluxcat/qspace.hpp"
#include "fluxcat/report_io.hpp"

namespace fluxcat::cli {

namespace {

using nlohmann::json;

enum class Format { table, csv, json_format };

std::map<std::string, Format> format_map() {
    return {{"table", Format::table}, {"csv", Format::csv}, {"json", Format::json_format}};
}

void deliver(const std::string& text, const std::string& output_path, std::ostream& out) {
    if (output_path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(output_path, std::ios::binary);
    if (!file) throw ValidationError("cannot open output file '" + output_path + "'");
    file << text;
}

Catalog load_or_bundled(const std::string& path) {
    return path.empty() ? bundled_catalog() : load_catalog(path);
}

std::vector<CatSizeReport> reports_for(const Catalog& catalog) {
    std::vector<CatSizeReport> reports;
    reports.reserve(catalog.devices.size());
    for (const Device& device : catalog.devices)
        reports.push_back(full_report(catalog.material_for(device), device));
    return reports;
}

std::string table1_text(const std::vector<CatSizeReport>& reports) {
    std::vector<std::vector<std::string>> rows;
    rows.reserve(reports.size());
    for (const auto& r : reports) {
        std::vector<std::string> row;
        row.push_back(r.device_name);
        row.push_back(r.material_name);
        row.push_back(format_sig(r.fermi_velocity, 3));
        row.push_back(format_sig(r.loop_length / 1e-6, 3));
        row.push_back(format_range_si(r.persistent_current_difference, "A"));
        row.push_back(r.delta_mu_over_muB.state == Computable::State::ok
                          ? format_range_sig(r.delta_mu_over_muB.value, 3)
                          : "n/a (" + r.delta_mu_over_muB.missing_input + " absent)");
        row.push_back(format_range_count(r.delta_N_tot));
        row.push_back(format_range_sig(r.delta_N_tot, 6));
        rows.push_back(std::move(row));
    }
    return render_table({"Exp.", "Mat.", "v_F [m/s]", "L [um]", "dI_p", "dmu/mu_B",
                         "dN_tot", "dN_tot (raw)"},
                        rows);
}

std::string estimate_text(const std::vector<CatSizeReport>& reports) {
    std::ostringstream out;
    const auto c = constants();
    for (const auto& r : reports) {
        out << "device: " << r.device_name << "   material: " << r.material_name << "\n";
        out << "  fermi_velocity                 " << format_sig(r.fermi_velocity, 3)
            << " m/s\n";
        out << "  gap                            "
            << format_sig(r.gap / (1e-3 * c.electron_volt), 3) << " meV\n";
        out << "  loop_length                    " << format_si(r.loop_length, "m") << "\n";
        out << "  persistent_current_difference  "
            << format_range_si(r.persistent_current_difference, "A") << "\n";
        out << "  enclosed_area                  "
            << (r.enclosed_area ? format_sig(*r.enclosed_area, 3) + " m^2" : "(absent)")
            << "\n";
        out << "  wire_cross_section             "
            << (r.wire_cross_section ? format_sig(*r.wire_cross_section, 3) + " m^2"
                                     : "(absent)")
            << "\n";
        out << "  delta_N_tot                    " << format_range_count(r.delta_N_tot)
            << " (raw " << format_range_sig(r.delta_N_tot, 6) << ")\n";
        out << "  delta_mu_over_muB              ";
        if (r.delta_mu_over_muB.state == Computable::State::ok)
            out << format_range_sig(r.delta_mu_over_muB.value, 3) << "\n";
        else
            out << "not computable (" << r.delta_mu_over_muB.missing_input << " absent)\n";
        out << "  measurement_bound              ";
        switch (r.measurement_bound.state) {
            case Computable::State::ok:
                out << format_range_sig(r.measurement_bound.value, 3) << "\n";
                break;
            case Computable::State::unbounded:
                out << "unbounded (zero current difference)\n";
                break;
            case Computable::State::not_computable:
                out << "not computable (" << r.measurement_bound.missing_input
                    << " absent)\n";
                break;
        }
        if (r.total_electrons)
            out << "  total_electrons                " << format_sig(*r.total_electrons, 3)
                << "\n";
        if (r.inferred_delta_v)
            out << "  inferred_delta_v               " << format_si(*r.inferred_delta_v, "m/s")
                << "\n";
        out << "  validity                       ";
        if (r.validity)
            out << to_string(r.validity->status) << " (expansion ratio "
                << format_sig(r.validity->expansion_ratio, 3) << ")\n";
        else
            out << "not computable (wire_cross_section absent)\n";
        if (!r.assumptions.empty()) {
            out << "  assumptions:\n";
            for (const auto& a : r.assumptions) out << "    - " << a << "\n";
        }
        out << "\n";
    }
    return out.str();
}

struct VerifyIntegralOutcome {
    Material material;
    double delta_v_ratio = 0.0;
    double delta_v = 0.0;
    double numeric = 0.0;
    double analytic = 0.0;
    double relative_error = 0.0;
    double threshold = 0.0;
    bool pass = false;
    QuadratureSpec spec;
};

std::string verify_integral_text(const VerifyIntegralOutcome& o) {
    std::ostringstream out;
    out << "material:          " << o.material.name << " (v_F = "
        << format_sig(o.material.fermi_velocity, 3)
        << " m/s, gap/eps_F = " << format_sig(o.material.gap_ratio(), 3) << ")\n";
    out << "delta_v:           " << format_sig(o.delta_v, 6) << " m/s ("
        << format_sig(o.delta_v_ratio, 3) << " of v_crit)\n";
    out << "numeric density:   " << format_sig(o.numeric, 9) << " 1/m^3\n";
    out << "analytic density:  " << format_sig(o.analytic, 9) << " 1/m^3\n";
    out << "relative error:    " << format_sig(o.relative_error, 3) << "\n";
    out << "threshold:         " << format_sig(o.threshold, 3) << "\n";
    out << (o.pass ? "PASS" : "FAIL") << ": local relation delta_n = 3|delta_j|/(4 e v_F)\n";
    return out.str();
}

json verify_integral_json(const VerifyIntegralOutcome& o) {
    json doc;
    doc["material"] = o.material.name;
    doc["fermi_velocity_m_per_s"] = o.material.fermi_velocity;
    doc["gap_J"] = o.material.gap;
    doc["delta_v_ratio"] = o.delta_v_ratio;
    doc["delta_v_m_per_s"] = o.delta_v;
    doc["numeric_density_per_m3"] = o.numeric;
    doc["analytic_density_per_m3"] = o.analytic;
    doc["relative_error"] = o.relative_error;
    doc["threshold"] = o.threshold;
    doc["pass"] = o.pass;
    doc["quadrature"] = {{"xi_cutoff", o.spec.xi_cutoff},
                         {"radial_points", o.spec.radial_points},
                         {"angular_points", o.spec.angular_points},
                         {"tail_correction", o.spec.tail_correction},
                         {"jacobian", o.spec.jacobian == RadialJacobian::exact ? "exact"
                                                                               : "leading"}};
    return doc;
}

std::string lattice_table(const std::vector<LatticeResult>& results) {
    std::vector<std::vector<std::string>> rows;
    int level = 1;
    for (const auto& r : results) {
        rows.push_back({std::to_string(level++),
                        format_sig(r.box_length, 6),
                        std::to_string(r.max_mode_index),
                        std::to_string(r.mode_count),
                        format_sig(r.delta_N_lattice, 9),
                        format_sig(r.delta_N_continuum_prediction, 9),
                        r.exact_zero ? "exact zero" : format_sig(r.relative_deviation, 3)});
    }
    return render_table({"level", "box [m]", "M", "modes", "dN_lattice", "dN_continuum",
                         "rel_dev"},
                        rows);
}

struct SweepPoint {
    double param_value;
    ValueRange delta_n;
    Computable delta_mu;
};

std::string sweep_table(const std::string& param, const std::vector<SweepPoint>& points) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& p : points) {
        rows.push_back({format_sig(p.param_value, 6),
                        format_range_sig(p.delta_n, 6),
                        p.delta_mu.state == Computable::State::ok
                            ? format_range_sig(p.delta_mu.value, 6)
                            : "n/a"});
    }
    return render_table({param, "delta_N_tot", "dmu/mu_B"}, rows);
}

std::string sweep_csv(const std::string& param, const std::vector<SweepPoint>& points) {
    std::ostringstream out;
    out << param << ",delta_N_tot_low,delta_N_tot_high,dmu_over_muB_low,dmu_over_muB_high\n";
    char buffer[64];
    auto full = [&](double x) {
        std::snprintf(buffer, sizeof buffer, "%.17g", x);
        return std::string(buffer);
    };
    for (const auto& p : points) {
        out << full(p.param_value) << ',' << full(p.delta_n.low) << ','
            << full(p.delta_n.high) << ',';
        if (p.delta_mu.state == Computable::State::ok)
            out << full(p.delta_mu.value.low) << ',' << full(p.delta_mu.value.high);
        else
            out << ',';
        out << '\n';
    }
    return out.str();
}

json sweep_json(const std::string& param, const std::vector<SweepPoint>& points) {
    json array = json::array();
    for (const auto& p : points) {
        json node;
        node[param] = p.param_value;
        node["delta_N_tot"] = {{"low", p.delta_n.low}, {"high", p.delta_n.high}};
        if (p.delta_mu.state == Computable::State::ok)
            node["dmu_over_muB"] = {{"low", p.delta_mu.value.low},
                                    {"high", p.delta_mu.value.high}};
        else
            node["dmu_over_muB"] = nullptr;
        array.push_back(node);
    }
    return array;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Microscopic size of flux-qubit current superpositions: closed-form "
                 "estimates, momentum-space quadrature and a discrete lattice oracle"};
    app.require_subcommand(1);
    app.fallthrough(false);

    // ---- table1 ----
    std::string t1_catalog, t1_output;
    Format t1_format = Format::table;
    auto* t1 = app.add_subcommand("table1", "Reproduce the summary table for the bundled "
                                            "(or a user) device catalog");
    t1->add_option("--catalog", t1_catalog, "catalog JSON path (default: bundled presets)");
    t1->add_option("--format", t1_format, "output format")
        ->transform(CLI::CheckedTransformer(format_map(), CLI::ignore_case));
    t1->add_option("--output", t1_output, "write to file instead of stdout");

    // ---- estimate ----
    std::string es_file, es_device, es_output;
    Format es_format = Format::table;
    auto* es = app.add_subcommand("estimate", "Full cat-size report for device(s) from a "
                                              "device file");
    es->add_option("file", es_file, "device catalog JSON")->required();
    es->add_option("--device", es_device, "restrict to one device by name");
    es->add_option("--format", es_format, "output format")
        ->transform(CLI::CheckedTransformer(format_map(), CLI::ignore_case));
    es->add_option("--output", es_output, "write to file instead of stdout");

    // ---- verify-integral ----
    std::string vi_material = "Al", vi_catalog, vi_output, vi_jacobian = "leading";
    double vi_fermi_velocity = 0.0, vi_gap_ratio = 0.0, vi_ratio = 1e-3, vi_threshold = 5e-3;
    QuadratureSpec vi_spec;
    bool vi_no_tail = false;
    Format vi_format = Format::table;
    auto* vi = app.add_subcommand("verify-integral",
                                  "Check the momentum-space quadrature of |delta n_q| "
                                  "against the closed form 3|delta_j|/(4 e v_F)");
    vi->add_option("--material", vi_material, "preset material name (default Al)");
    vi->add_option("--catalog", vi_catalog, "catalog supplying --material");
    vi->add_option("--fermi-velocity", vi_fermi_velocity,
                   "synthetic material: Fermi velocity [m/s] (use with --gap-ratio)");
    vi->add_option("--gap-ratio", vi_gap_ratio, "synthetic material: gap/eps_F");
    vi->add_option("--delta-v-ratio", vi_ratio, "|delta_v| / v_crit (default 1e-3)");
    vi->add_option("--xi-cutoff", vi_spec.xi_cutoff, "radial window |xi| <= cutoff*gap");
    vi->add_option("--radial-points", vi_spec.radial_points, "radial panels (default 2048)");
    vi->add_option("--angular-points", vi_spec.angular_points, "angular nodes (default 64)");
    vi->add_flag("--no-tail", vi_no_tail, "disable the analytic tail correction");
    vi->add_option("--jacobian", vi_jacobian, "radial jacobian: leading|exact")
        ->check(CLI::IsMember({"leading", "exact"}));
    vi->add_option("--threshold", vi_threshold, "pass threshold on relative error");
    vi->add_option("--format", vi_format, "output format")
        ->transform(CLI::CheckedTransformer(format_map(), CLI::ignore_case));
    vi->add_option("--output", vi_output, "write to file instead of stdout");

    // ---- lattice ----
    double la_gap_ratio = 0.02, la_dv_ratio = 1e-2, la_margin = 1.05, la_threshold = 0.05;
    double la_box_length = 0.0;
    int la_levels = 3, la_threads = 0, la_max_index = 0;
    std::uint64_t la_max_modes = 0;
    std::string la_output;
    Format la_format = Format::table;
    auto* la = app.add_subcommand("lattice",
                                  "Brute-force boosted-Fermi-sea convergence study on "
                                  "refining momentum grids");
    la->add_option("--gap-ratio", la_gap_ratio, "exaggerated gap/eps_F (default 0.02)");
    la->add_option("--delta-v-ratio", la_dv_ratio, "|delta_v| / v_crit (default 0.01)");
    la->add_option("--margin", la_margin, "cube half-width over boosted Fermi radius");
    la->add_option("--levels", la_levels, "refinement levels (default 3, min 2)");
    la->add_option("--threads", la_threads, "worker threads (0 = hardware)");
    la->add_option("--box-length", la_box_length, "override base box length [m]");
    la->add_option("--max-mode-index", la_max_index, "override base modes per half-axis");
    la->add_option("--max-modes", la_max_modes, "override the mode-count guardrail");
    la->add_option("--threshold", la_threshold, "pass threshold on final deviation");
    la->add_option("--format", la_format, "output format")
        ->transform(CLI::CheckedTransformer(format_map(), CLI::ignore_case));
    la->add_option("--output", la_output, "write to file instead of stdout");

    // ---- sweep ----
    std::string sw_device, sw_catalog, sw_file, sw_param, sw_output;
    double sw_from = 0.0, sw_to = 0.0;
    int sw_steps = 0;
    Format sw_format = Format::table;
    auto* sw = app.add_subcommand("sweep", "Scaling series of delta_N_tot over a device "
                                           "parameter (the loop formula is linear)");
    sw->add_option("--device", sw_device, "base device name")->required();
    sw->add_option("--catalog", sw_catalog, "catalog JSON path (default: bundled presets)");
    sw->add_option("--file", sw_file, "device file (alias of --catalog)");
    sw->add_option("--param", sw_param, "loop_length | persistent_current_difference")
        ->required()
        ->check(CLI::IsMember({"loop_length", "persistent_current_difference"}));
    sw->add_option("--from", sw_from, "start value [SI]")->required();
    sw->add_option("--to", sw_to, "end value [SI]")->required();
    sw->add_option("--steps", sw_steps, "number of points (>= 2)")->required();
    sw->add_option("--format", sw_format, "output format")
        ->transform(CLI::CheckedTransformer(format_map(), CLI::ignore_case));
    sw->add_option("--output", sw_output, "write to file instead of stdout");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kExitSuccess;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitInputError;
    }

    try {
        if (t1->parsed()) {
            const Catalog catalog = load_or_bundled(t1_catalog);
            const auto reports = reports_for(catalog);
            std::string text;
            switch (t1_format) {
                case Format::table: text = table1_text(reports); break;
                case Format::csv: text = reports_to_csv(reports); break;
                case Format::json_format: text = reports_to_json(reports); break;
            }
            deliver(text, t1_output, out);
            return kExitSuccess;
        }

        if (es->parsed()) {
            const Catalog catalog = load_catalog(es_file);
            std::vector<CatSizeReport> reports;
            if (es_device.empty()) {
                reports = reports_for(catalog);
            } else {
                const Device& device = catalog.device(es_device);
                reports.push_back(full_report(catalog.material_for(device), device));
            }
            std::string text;
            switch (es_format) {
                case Format::table: text = estimate_text(reports); break;
                case Format::csv: text = reports_to_csv(reports); break;
                case Format::json_format: text = reports_to_json(reports); break;
            }
            deliver(text, es_output, out);
            return kExitSuccess;
        }

        if (vi->parsed()) {
            VerifyIntegralOutcome o;
            if (vi_fermi_velocity > 0.0 || vi_gap_ratio > 0.0) {
                if (!(vi_fermi_velocity > 0.0) || !(vi_gap_ratio > 0.0))
                    throw ValidationError("synthetic material needs both --fermi-velocity "
                                          "and --gap-ratio");
                o.material = make_material_with_gap_ratio("custom", vi_fermi_velocity,
                                                          vi_gap_ratio);
            } else {
                o.material = load_or_bundled(vi_catalog).material(vi_material);
            }
            o.spec = vi_spec;
            o.spec.tail_correction = !vi_no_tail;
            o.spec.jacobian =
                vi_jacobian == "exact" ? RadialJacobian::exact : RadialJacobian::leading;
            o.delta_v_ratio = vi_ratio;
            o.delta_v = vi_ratio * o.material.critical_velocity;
            o.threshold = vi_threshold;
            const Vec3 delta_v{0.0, 0.0, o.delta_v};
            if (validity(o.material, delta_v).status != ValidityStatus::ok)
                throw ValidationError(
                    "verify-integral requires |delta_v|/v_crit in the ok band (< 0.1), got " +
                    format_sig(vi_ratio, 3));
            try {
                o.numeric = delta_n_density_numeric(o.material, delta_v, o.spec);
            } catch (const ConvergenceError& e) {
                err << "verification failed: " << e.what() << "\n";
                return kExitVerificationFailed;
            }
            o.analytic = delta_n_density_analytic(
                o.material, delta_j_from_delta_v(o.material, delta_v));
            o.relative_error = verify_local_relation(o.material, delta_v, o.spec);
            o.pass = o.relative_error < o.threshold;
            std::string text;
            switch (vi_format) {
                case Format::table: text = verify_integral_text(o); break;
                case Format::csv: {
                    std::ostringstream csv;
                    csv << "material,delta_v_ratio,numeric_density_per_m3,"
                           "analytic_density_per_m3,relative_error,threshold,pass\n"
                        << o.material.name << ',' << format_sig(o.delta_v_ratio, 17) << ','
                        << format_sig(o.numeric, 17) << ',' << format_sig(o.analytic, 17)
                        << ',' << format_sig(o.relative_error, 17) << ','
                        << format_sig(o.threshold, 17) << ',' << (o.pass ? "true" : "false")
                        << '\n';
                    text = csv.str();
                    break;
                }
                case Format::json_format: text = verify_integral_json(o).dump(2) + "\n"; break;
            }
            deliver(text, vi_output, out);
            return o.pass ? kExitSuccess : kExitVerificationFailed;
        }

        if (la->parsed()) {
            LatticeSpec base = study_spec(la_gap_ratio, la_dv_ratio, la_margin, la_threads);
            if (la_box_length > 0.0) base.box_length = la_box_length;
            if (la_max_index > 0) base.max_mode_index = la_max_index;
            if (la_max_modes > 0) base.max_modes = la_max_modes;
            const auto results = convergence_study(base, la_levels);
            std::string text;
            switch (la_format) {
                case Format::table: text = lattice_table(results); break;
                case Format::csv: text = lattice_results_to_csv(results); break;
                case Format::json_format: text = lattice_results_to_json(results); break;
            }
            deliver(text, la_output, out);
            const LatticeResult& final_level = results.back();
            const bool pass =
                final_level.exact_zero || final_level.relative_deviation < la_threshold;
            if (!pass)
                err << "verification failed: final-level deviation "
                    << format_sig(final_level.relative_deviation, 3)
                    << " is not below " << format_sig(la_threshold, 3) << "\n";
            return pass ? kExitSuccess : kExitVerificationFailed;
        }

        if (sw->parsed()) {
            if (!sw_file.empty() && !sw_catalog.empty())
                throw ValidationError("--file and --catalog are aliases; give one");
            const Catalog catalog =
                load_or_bundled(!sw_file.empty() ? sw_file : sw_catalog);
            const Device base = catalog.device(sw_device);
            const Material& material = catalog.material_for(base);
            if (sw_steps < 2) throw ValidationError("sweep needs --steps >= 2");
            if (!(sw_to > sw_from)) throw ValidationError("sweep needs --to > --from");
            if (sw_from < 0.0) throw ValidationError("sweep range must be non-negative");
            if (sw_param == "loop_length" && !(sw_from > 0.0))
                throw ValidationError("loop_length sweep must start above zero");

            std::vector<SweepPoint> points;
            points.reserve(static_cast<std::size_t>(sw_steps));
            for (int i = 0; i < sw_steps; ++i) {
                const double value =
                    sw_from + (sw_to - sw_from) * static_cast<double>(i) /
                                  static_cast<double>(sw_steps - 1);
                Device device = base;
                if (sw_param == "loop_length")
                    device.loop_length = value;
                else
                    device.persistent_current_difference = ValueRange::scalar(value);
                points.push_back(SweepPoint{value, delta_N_tot(material, device),
                                            delta_mu_over_muB(device)});
            }
            std::string text;
            switch (sw_format) {
                case Format::table: text = sweep_table(sw_param, points); break;
                case Format::csv: text = sweep_csv(sw_param, points); break;
                case Format::json_format:
                    text = sweep_json(sw_param, points).dump(2) + "\n";
                    break;
            }
            deliver(text, sw_output, out);
            return kExitSuccess;
        }
    } catch (const SchemaError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const ResourceLimitError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const ConvergenceError& e) {
        err << "verification failed: " << e.what() << "\n";
        return kExitVerificationFailed;
    }
    err << "error: no subcommand selected\n";
    return kExitInputError;
}

}  // namespace fluxcat::cli
