#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "natorder/algebra.hpp"
#include "natorder/catalog.hpp"
#include "natorder/lattice.hpp"
#include "natorder/sim.hpp"
#include "natorder/version.hpp"

using namespace natorder;
using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    check(f.good(), "usage", "cannot open '" + path + "'");
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& data) {
    std::ofstream f(path, std::ios::binary);
    check(f.good(), "usage", "cannot write '" + path + "'");
    f << data;
}

Catalog load_selected_catalog(const std::string& flag_path) {
    std::string path = flag_path;
    if (path.empty())
        if (const char* env = std::getenv("CDA_CATALOG")) path = env;
    Catalog cat = path.empty() ? load_default_catalog()
                               : load_catalog(read_file(path));
    std::cerr << "natorder " << kVersion << "  catalog sha256 " << cat.sha256
              << (path.empty() ? " (bundled)" : " (" + path + ")") << "\n";
    return cat;
}

int run_list(const Catalog& cat, bool as_json) {
    if (as_json) {
        json out = json::array();
        for (const Setup* s : cat.all())
            out.push_back({{"id", s->id},
                           {"F", s->F},
                           {"n", s->n},
                           {"n_r", s->n_r},
                           {"n_t", s->n_t},
                           {"rate", rational_str(s->rate)},
                           {"L", s->L_id},
                           {"E", s->E_id},
                           {"example", s->example}});
        std::cout << out.dump(2) << "\n";
        return 0;
    }
    std::cout << "id        F     n  n_r  n_t  rate  claimed disc norm\n";
    for (const Setup* s : cat.all()) {
        std::ostringstream os;
        os.width(10);
        std::cout << s->id << (s->id.size() < 8 ? std::string(8 - s->id.size(), ' ')
                                                : " ")
                  << (s->F == "Q" ? "Q " : "Qi") << "    " << s->n << "  "
                  << s->n_r << "    " << s->n_t << "    "
                  << rational_str(s->rate) << "     "
                  << (s->claimed_table ? s->claimed_table->to_string()
                                       : std::string("-"))
                  << (s->example ? "   [example]" : "") << "\n";
    }
    return 0;
}

int run_verify(const Catalog& cat, const std::string& id, bool strict,
               bool as_json) {
    const Setup& s = cat.get(id);
    DiscriminantReport r = verify_setup(s);
    json j = report_to_json(r);
    j["tool_version"] = kVersion;
    j["catalog_sha256"] = cat.sha256;
    if (as_json) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "setup " << r.setup_id << "\n";
        std::cout << "  computed |Nm(disc(O_nat/O_F))| = "
                  << r.formula_value.to_string() << "\n";
        std::cout << "  trace-form oracle              = "
                  << r.traceform_value.to_string() << "  ("
                  << (r.oracle_equal ? "equal" : "MISMATCH") << ")\n";
        if (r.claimed_table)
            std::cout << "  Table 1 claim " << r.claimed_table->to_string()
                      << (r.matches_table ? "  (matches)" : "  (differs)")
                      << "\n";
        if (r.claimed_theorem)
            std::cout << "  theorem claim " << r.claimed_theorem->to_string()
                      << (r.matches_theorem ? "  (matches)" : "  (differs)")
                      << "\n";
        std::cout << "  lemma-2 bound " << r.bound_value.to_string()
                  << (r.bound_exact ? " (attained)" : "")
                  << (r.bound_ok ? "" : "  VIOLATED") << "\n";
        std::cout << "  lambda = " << rational_str(r.lambda)
                  << (r.lambda_gt_one ? " > 1" : " < 1");
        if (r.lambda_paper)
            std::cout << "   (printed in the source: "
                      << rational_str(*r.lambda_paper) << ")";
        std::cout << "\n";
        if (r.balance)
            std::cout << "  D_{E/L}(gamma) = " << r.balance->to_string() << "\n";
        std::cout << "  non-norm: " << r.nonnorm.conclusion << " — "
                  << r.nonnorm.summary << "\n";
        std::cout << "  division algebra: " << (r.division ? "yes" : "UNPROVEN")
                  << "\n";
        if (r.units)
            std::cout << "  unit exhaustion at " << r.units->prime_label << ": "
                      << (r.units->all_in_subgroup
                              ? "cannot-conclude for every unit"
                              : "non-norm unit found")
                      << "\n";
        for (auto& note : r.notes) std::cout << "  note: " << note << "\n";
    }
    if (!r.oracle_equal) return 1;
    if (strict && r.claimed_theorem && !r.matches_theorem) return 1;
    return 0;
}

int run_mindet(const Catalog& cat, const std::string& id, long bound,
               const std::string& constellation, const std::string& mode_str,
               bool as_json) {
    const Setup& s = cat.get(id);
    LatticeMode mode = mode_str == "block" ? LatticeMode::block_diagonal
                                           : LatticeMode::symmetric;
    if (mode_str.empty())
        mode = s.L_level() >= 0 ? LatticeMode::block_diagonal
                                : LatticeMode::symmetric;
    MinDetResult r;
    if (!constellation.empty()) {
        // search over the constellation difference set
        std::vector<long> vals = constellation_set(constellation);
        std::vector<long> diffs;
        for (long a : vals)
            for (long b : vals) diffs.push_back(a - b);
        std::sort(diffs.begin(), diffs.end());
        diffs.erase(std::unique(diffs.begin(), diffs.end()), diffs.end());
        r = min_determinant(s, mode, diffs);
    } else {
        r = min_determinant(s, mode, bound);
    }
    if (as_json) {
        json j = {{"setup", s.id},
                  {"mode", mode == LatticeMode::symmetric ? "symmetric" : "block"},
                  {"delta_min", rational_str(r.delta_min)},
                  {"min_abs_norm", rational_str(r.min_abs_nm)},
                  {"argmin", r.argmin},
                  {"points", r.points_scanned}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "delta_min = " << rational_str(r.delta_min)
                  << "  min |Nm(nr)| = " << rational_str(r.min_abs_nm)
                  << "  over " << r.points_scanned << " nonzero points\n";
        std::cout << "argmin coords:";
        for (long v : r.argmin) std::cout << " " << v;
        std::cout << "\n";
    }
    return 0;
}

int run_export(const Catalog& cat, const std::string& id,
               const std::string& mode_str, const std::string& out,
               const std::string& constellation, int prec_bits, int digits) {
    const Setup& s = cat.get(id);
    LatticeMode mode = mode_str == "block" ? LatticeMode::block_diagonal
                                           : LatticeMode::symmetric;
    Embedding emb(*s.tower, prec_bits);
    Codebook cb = make_codebook(s, mode, emb, constellation_set(constellation));
    write_file(out, codebook_csv(cb, cat.sha256, kVersion, digits));
    std::cerr << "wrote " << cb.matrices.size() << " codewords to " << out
              << "\n";
    return 0;
}

int run_simulate(const Catalog& cat, const std::string& config_path,
                 const std::string& out) {
    (void)cat;
    json cfg = json::parse(read_file(config_path));
    SimCodebook cb = SimCodebook::from_csv(read_file(cfg.at("codebook")));
    if (cfg.value("baseline_repeat_first_row", false))
        cb = cb.repeat_first_row_baseline();
    SimConfig sc;
    for (double v : cfg.at("snr_db")) sc.snr_grid_db.push_back(v);
    sc.trials_per_point = cfg.at("trials").get<long>();
    sc.seed = cfg.at("seed").get<uint64_t>();
    if (cfg.contains("sigma_h")) sc.sigma_h = cfg["sigma_h"].get<double>();
    if (cfg.contains("noise_scale_override"))
        sc.noise_scale_override = cfg["noise_scale_override"].get<double>();
    int n_r_ant = cfg.value("n_r_antennas", cb.n);
    ErrorRateTable t = simulate(cb, sc, n_r_ant);
    write_file(out, error_table_csv(t));
    std::cerr << "wrote " << t.rows.size() << " SNR points to " << out << "\n";
    return 0;
}

int run_enumerate(const std::string& family, long bound, bool as_json) {
    MinimalityReport r = enumerate_minimality(family, bound);
    if (as_json) {
        json cands = json::array();
        for (const auto& c : r.candidates)
            cands.push_back({{"params", c.params},
                             {"case", c.case_label},
                             {"disc", c.disc.to_string()},
                             {"lambda", rational_str(c.lambda)},
                             {"gamma_norm_floor", c.gamma_norm_floor},
                             {"lower_bound", c.lower_bound.to_string()}});
        json j = {{"family", r.family},
                  {"bound", r.bound},
                  {"candidates", cands},
                  {"winner", r.winner().params},
                  {"winner_bound", r.winner().lower_bound.to_string()},
                  {"winner_unique", r.winner_unique},
                  {"paper_agrees", r.paper_agrees},
                  {"notes", r.notes}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "family " << r.family << ", " << r.candidates.size()
                  << " candidates up to bound " << r.bound << "\n";
        std::cout << "winner: " << r.winner().params << "  disc "
                  << r.winner().disc.to_string() << "  natural-order bound "
                  << r.winner().lower_bound.to_string()
                  << (r.winner_unique ? " (unique)" : "") << "\n";
        for (const auto& c : r.candidates)
            std::cout << "  " << c.params << "  case " << c.case_label
                      << "  disc " << c.disc.to_string() << "  bound "
                      << c.lower_bound.to_string() << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cyclic division algebra natural orders: verification, "
                 "space-time lattices, and desk-scale simulation"};
    app.require_subcommand(1);
    std::string catalog_path;
    app.add_option("--catalog", catalog_path,
                   "catalog JSON path (default: bundled; env CDA_CATALOG)");

    auto* c_list = app.add_subcommand("list", "list catalogued setups");
    bool list_json = false;
    c_list->add_flag("--json", list_json);

    auto* c_verify = app.add_subcommand(
        "verify", "verify discriminants, bounds and non-norm certificates");
    std::string v_setup;
    bool v_strict = false, v_json = false;
    c_verify->add_option("--setup", v_setup)->required();
    c_verify->add_flag("--strict", v_strict,
                       "exit 1 when computed != theorem claim");
    c_verify->add_flag("--json", v_json);

    auto* c_mindet = app.add_subcommand(
        "mindet", "exhaustive exact minimum determinant search");
    std::string m_setup, m_constellation, m_mode;
    long m_bound = 1;
    bool m_json = false;
    c_mindet->add_option("--setup", m_setup)->required();
    c_mindet->add_option("--bound", m_bound, "coordinate box bound");
    c_mindet->add_option("--constellation", m_constellation,
                         "search differences of this constellation instead");
    c_mindet->add_option("--mode", m_mode, "symmetric|block");
    c_mindet->add_flag("--json", m_json);

    auto* c_export = app.add_subcommand("export", "export a codebook CSV");
    std::string e_setup, e_mode = "symmetric", e_out, e_constellation = "pm1";
    int e_prec = 128, e_digits = 17;
    c_export->add_option("--setup", e_setup)->required();
    c_export->add_option("--mode", e_mode, "symmetric|block")->required();
    c_export->add_option("--out", e_out)->required();
    c_export->add_option("--constellation", e_constellation);
    c_export->add_option("--precision", e_prec, "embedding precision bits");
    c_export->add_option("--digits", e_digits, "export decimal digits");

    auto* c_sim = app.add_subcommand("simulate", "seeded Rayleigh ML simulation");
    std::string s_config, s_out;
    c_sim->add_option("--config", s_config)->required();
    c_sim->add_option("--out", s_out)->required();

    auto* c_enum = app.add_subcommand(
        "enumerate", "re-run the desk-scale minimality enumerations");
    std::string n_family;
    long n_bound = 50;
    bool n_json = false;
    c_enum->add_option("--family", n_family, "Q-2|Q-2-2")->required();
    c_enum->add_option("--bound", n_bound);
    c_enum->add_flag("--json", n_json);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*c_enum) return run_enumerate(n_family, n_bound, n_json);
        Catalog cat = load_selected_catalog(catalog_path);
        if (*c_list) return run_list(cat, list_json);
        if (*c_verify) return run_verify(cat, v_setup, v_strict, v_json);
        if (*c_mindet)
            return run_mindet(cat, m_setup, m_bound, m_constellation, m_mode,
                              m_json);
        if (*c_export)
            return run_export(cat, e_setup, e_mode, e_out, e_constellation,
                              e_prec, e_digits);
        if (*c_sim) return run_simulate(cat, s_config, s_out);
    } catch (const Error& e) {
        std::cerr << "error (" << e.kind << "): " << e.what() << "\n";
        if (e.kind == "verify") return 1;
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
