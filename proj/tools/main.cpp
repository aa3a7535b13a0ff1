#include "commands.hpp"

#include "fracheat/errors.hpp"
#include "fracheat/io.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <string>
#include <vector>

using nlohmann::json;

namespace {

std::vector<std::string> split_csv(const std::string& text)
{
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        out.push_back(text.substr(pos, comma - pos));
        pos = comma + 1;
        if (comma == text.size()) break;
    }
    return out;
}

// "from:to:count" -> {log2_from/log10_from, ..., count}
json range_spec(const std::string& text, const char* scale)
{
    auto parts = split_csv(text);
    if (parts.size() == 1) {
        auto colon = split_csv(text);
        (void)colon;
    }
    std::vector<std::string> fields;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto c = text.find(':', pos);
        if (c == std::string::npos) c = text.size();
        fields.push_back(text.substr(pos, c - pos));
        pos = c + 1;
        if (c == text.size()) break;
    }
    if (fields.size() != 3)
        throw fracheat::ValidationError("range must be from:to:count, got " + text);
    json j;
    j[std::string(scale) + "_from"] = std::stod(fields[0]);
    j[std::string(scale) + "_to"] = std::stod(fields[1]);
    j["count"] = std::stol(fields[2]);
    return j;
}

json list_or_range(const std::string& list_text, const std::string& range_text,
                   const char* scale, bool rational_list)
{
    if (!range_text.empty()) return range_spec(range_text, scale);
    if (list_text.empty())
        throw fracheat::ValidationError("either a list or a range is required");
    json arr = json::array();
    for (const auto& item : split_csv(list_text)) {
        if (rational_list) arr.push_back(item);
        else arr.push_back(std::stod(item));
    }
    return json{{"list", arr}};
}

// a set argument is "full-line", an inline JSON object, or a path to one
json set_argument(const std::string& text)
{
    if (text == "full-line") return json("full-line");
    if (!text.empty() && text.front() == '{') return json::parse(text);
    return json::parse(fracheat::read_text_file(text));
}

struct SvcFlags {
    std::string r_const, r_list, c = "1/2", C = "1", alpha = "1/2";
    unsigned precision_bits = 128;
    unsigned depth = 4;

    void attach(CLI::App* cmd)
    {
        cmd->add_option("--r-const", r_const, "constant gap ratio p/q");
        cmd->add_option("--r-list", r_list, "comma-separated gap ratios p/q");
        cmd->add_option("--c", c, "parametric c in (0,1)");
        cmd->add_option("--C", C, "parametric C > 0");
        cmd->add_option("--alpha", alpha, "parametric alpha > 0");
        cmd->add_option("--precision-bits", precision_bits,
                        "dyadic grid for the parametric ratios");
        cmd->add_option("--depth", depth, "construction depth")->required();
    }

    json spec() const
    {
        json svc;
        if (!r_const.empty()) {
            json ratios = json::array();
            for (unsigned i = 0; i < depth; ++i) ratios.push_back(r_const);
            svc["ratios"] = ratios;
        } else if (!r_list.empty()) {
            json ratios = json::array();
            for (const auto& r : split_csv(r_list)) ratios.push_back(r);
            svc["ratios"] = ratios;
        } else {
            svc["c"] = c;
            svc["C"] = C;
            svc["alpha"] = alpha;
            svc["precision_bits"] = precision_bits;
        }
        return svc;
    }
};

struct CommonOpts {
    std::string output = "fracheat-run";
    std::string format = "csv";
    long seed = 0;

    void attach(CLI::App* cmd)
    {
        cmd->add_option("--out", output, "output path prefix for artifacts");
        cmd->add_option("--format", format, "table artifact format: csv or json");
        cmd->add_option("--seed", seed, "seed for randomized sampling");
    }

    json finish(const std::string& command, json parameters) const
    {
        json config;
        config["command"] = command;
        config["parameters"] = std::move(parameters);
        config["output_path"] = output;
        config["format"] = format;
        config["seed"] = seed;
        return config;
    }
};

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"numerical laboratory for thickness and observability of the "
                 "1-d fractional heat semigroup"};
    app.require_subcommand(0, 1);

    std::string config_path;
    app.add_option("--config", config_path, "run a JSON experiment config");

    auto* build = app.add_subcommand("svc-build", "construct a Smith-Volterra-Cantor set");
    SvcFlags build_svc;
    CommonOpts build_opts;
    build_svc.attach(build);
    build_opts.attach(build);

    auto* thick = app.add_subcommand("thickness", "exact thickness profile of a set complement");
    CommonOpts thick_opts;
    std::string t_set = "full-line", t_L, t_Llog;
    thick->add_option("--set", t_set, "\"full-line\", inline JSON, or a set file");
    thick->add_option("--L", t_L, "comma-separated scales p/q");
    thick->add_option("--L-log2", t_Llog, "log2-spaced scales from:to:count");
    thick_opts.attach(thick);

    auto* fit = app.add_subcommand("fit-alpha", "fit theta(L) ~ c exp(-C L^-alpha)");
    CommonOpts fit_opts;
    std::string f_profile, f_set, f_L, f_Llog;
    fit->add_option("--profile", f_profile, "thickness CSV to fit");
    fit->add_option("--set", f_set, "set to profile and fit");
    fit->add_option("--L", f_L, "comma-separated scales p/q");
    fit->add_option("--L-log2", f_Llog, "log2-spaced scales from:to:count");
    fit_opts.attach(fit);

    auto* verify = app.add_subcommand("svc-verify", "two-sided thickness envelope of an SVC set");
    SvcFlags verify_svc;
    CommonOpts verify_opts;
    std::string v_L, v_Llog;
    double v_kappa = 3.0;
    verify_svc.attach(verify);
    verify->add_option("--L", v_L, "comma-separated scales p/q");
    verify->add_option("--L-log2", v_Llog, "log2-spaced scales from:to:count");
    verify->add_option("--kappa", v_kappa, "lower-bound index constant (paper uses 3)");
    verify_opts.attach(verify);

    auto* spectral = app.add_subcommand("spectral", "band-restricted observation constants d(lambda)");
    CommonOpts spec_opts;
    double sp_X = 8.0;
    int sp_N = 4096;
    std::string sp_omega, sp_lambda, sp_lambda_log;
    bool sp_fit = false;
    spectral->add_option("--X", sp_X, "periodic window length");
    spectral->add_option("--N", sp_N, "grid points (power of two)");
    spectral->add_option("--omega", sp_omega, "observation set (JSON or file)")->required();
    spectral->add_option("--lambda", sp_lambda, "comma-separated band thresholds");
    spectral->add_option("--lambda-log10", sp_lambda_log, "log10-spaced thresholds from:to:count");
    spectral->add_flag("--fit-growth", sp_fit, "fit the growth exponent of -log d");
    spec_opts.attach(spectral);

    auto* obs = app.add_subcommand("observability", "sharp band observability constants");
    CommonOpts obs_opts;
    double ob_X = 8.0, ob_s = 1.0, ob_lambda_max = 100.0;
    int ob_N = 4096, ob_quad = 32;
    std::string ob_omega, ob_T, ob_Tlog, ob_lr;
    obs->add_option("--X", ob_X, "periodic window length");
    obs->add_option("--N", ob_N, "grid points (power of two)");
    obs->add_option("--omega", ob_omega, "observation set (JSON or file)")->required();
    obs->add_option("--s", ob_s, "fractional order");
    obs->add_option("--lambda-max", ob_lambda_max, "band threshold");
    obs->add_option("--T", ob_T, "comma-separated horizons");
    obs->add_option("--T-log10", ob_Tlog, "log10-spaced horizons from:to:count");
    obs->add_option("--quad-nodes", ob_quad, "Gauss-Legendre nodes in time");
    obs->add_option("--lr", ob_lr, "calibrated constants JSON (file or inline)");
    obs_opts.attach(obs);

    auto* probe = app.add_subcommand("probe-asymptotics",
                                     "validate the coherent-state interior/exterior behavior");
    CommonOpts probe_opts;
    double pr_s = 0.5, pr_xi0 = 1.0, pr_w = 0.5, pr_p = 0.25, pr_T = 1.0, pr_eta = 0.0;
    int pr_quad = 512;
    std::string pr_h, pr_hlog;
    probe->add_option("--s", pr_s, "fractional order in (0,1)");
    probe->add_option("--xi0", pr_xi0, "carrier frequency");
    probe->add_option("--w", pr_w, "bump support half-width");
    probe->add_option("--p", pr_p, "bump plateau half-width");
    probe->add_option("--quad-points", pr_quad, "base quadrature nodes");
    probe->add_option("--T", pr_T, "time horizon");
    probe->add_option("--eta", pr_eta, "interior radius (0 = determine empirically)");
    probe->add_option("--h-list", pr_h, "comma-separated h values");
    probe->add_option("--h-log2", pr_hlog, "log2-spaced h from:to:count");
    probe_opts.attach(probe);

    auto* nec = app.add_subcommand("necessity", "observability-ratio blow-up experiment");
    CommonOpts nec_opts;
    double ne_s = 1.0 / 3, ne_xi0 = 1.0, ne_w = 0.5, ne_p = 0.25, ne_T = 0.5, ne_r = 1.0,
           ne_eta = 0.0;
    int ne_quad = 512, ne_tnodes = 24;
    std::string ne_K, ne_h, ne_hlog;
    nec->add_option("--s", ne_s, "fractional order in (0,1)");
    nec->add_option("--xi0", ne_xi0, "carrier frequency");
    nec->add_option("--w", ne_w, "bump support half-width");
    nec->add_option("--p", ne_p, "bump plateau half-width");
    nec->add_option("--quad-points", ne_quad, "base quadrature nodes");
    nec->add_option("--T", ne_T, "time horizon");
    nec->add_option("--r", ne_r, "window factor: L = r h^beta");
    nec->add_option("--eta", ne_eta, "interior radius (0 = determine empirically)");
    nec->add_option("--time-nodes", ne_tnodes, "Gauss-Legendre nodes in time");
    nec->add_option("--K", ne_K, "removed set (JSON or file); omega = R \\ K")->required();
    nec->add_option("--h-list", ne_h, "comma-separated h values");
    nec->add_option("--h-log2", ne_hlog, "log2-spaced h from:to:count");
    nec_opts.attach(nec);

    int exit_code = 0;
    std::string err;
    try {
        app.parse(argc, argv);

        json config;
        if (!config_path.empty()) {
            config = json::parse(fracheat::read_text_file(config_path));
        } else if (build->parsed()) {
            json params;
            params["svc"] = build_svc.spec();
            params["depth"] = build_svc.depth;
            config = build_opts.finish("svc-build", std::move(params));
        } else if (thick->parsed()) {
            json params;
            params["set"] = set_argument(t_set);
            params["L"] = list_or_range(t_L, t_Llog, "log2", true);
            config = thick_opts.finish("thickness", std::move(params));
        } else if (fit->parsed()) {
            json params;
            if (!f_profile.empty()) {
                params["profile_csv"] = f_profile;
            } else {
                params["set"] = set_argument(f_set);
                params["L"] = list_or_range(f_L, f_Llog, "log2", true);
            }
            config = fit_opts.finish("fit-alpha", std::move(params));
        } else if (verify->parsed()) {
            json params;
            params["svc"] = verify_svc.spec();
            params["depth"] = verify_svc.depth;
            params["L"] = list_or_range(v_L, v_Llog, "log2", true);
            params["kappa"] = v_kappa;
            config = verify_opts.finish("svc-verify", std::move(params));
        } else if (spectral->parsed()) {
            json params;
            params["grid"] = {{"X", sp_X}, {"N", sp_N}};
            params["omega"] = set_argument(sp_omega);
            params["lambda"] = list_or_range(sp_lambda, sp_lambda_log, "log10", false);
            params["fit_growth"] = sp_fit;
            config = spec_opts.finish("spectral", std::move(params));
        } else if (obs->parsed()) {
            json params;
            params["grid"] = {{"X", ob_X}, {"N", ob_N}};
            params["omega"] = set_argument(ob_omega);
            params["s"] = ob_s;
            params["lambda_max"] = ob_lambda_max;
            params["quad_nodes"] = ob_quad;
            params["T"] = list_or_range(ob_T, ob_Tlog, "log10", false);
            if (!ob_lr.empty())
                params["lr"] = ob_lr.front() == '{' ? json::parse(ob_lr)
                                                    : json::parse(fracheat::read_text_file(ob_lr));
            config = obs_opts.finish("observability", std::move(params));
        } else if (probe->parsed()) {
            json params;
            params["s"] = pr_s;
            params["xi0"] = pr_xi0;
            params["w"] = pr_w;
            params["p"] = pr_p;
            params["quad_points"] = pr_quad;
            params["T"] = pr_T;
            if (pr_eta > 0) params["eta"] = pr_eta;
            params["h"] = list_or_range(pr_h, pr_hlog, "log2", false);
            config = probe_opts.finish("probe-asymptotics", std::move(params));
        } else if (nec->parsed()) {
            json params;
            params["s"] = ne_s;
            params["xi0"] = ne_xi0;
            params["w"] = ne_w;
            params["p"] = ne_p;
            params["quad_points"] = ne_quad;
            params["T"] = ne_T;
            params["r"] = ne_r;
            params["time_nodes"] = ne_tnodes;
            if (ne_eta > 0) params["eta"] = ne_eta;
            params["K"] = set_argument(ne_K);
            params["h"] = list_or_range(ne_h, ne_hlog, "log2", false);
            config = nec_opts.finish("necessity", std::move(params));
        } else {
            std::fprintf(stderr, "nothing to do: pass --config <file> or a subcommand (--help)\n");
            return 2;
        }

        exit_code = fracheat::cli::run_config_for_exit_code(config, &err);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const fracheat::ValidationError& e) {
        err = e.what();
        exit_code = 2;
    } catch (const json::exception& e) {
        err = e.what();
        exit_code = 2;
    } catch (const fracheat::NumericalError& e) {
        err = e.what();
        exit_code = 3;
    } catch (const std::invalid_argument& e) {
        err = e.what();
        exit_code = 2;
    } catch (const std::exception& e) {
        err = e.what();
        exit_code = 3;
    }
    if (exit_code != 0 && !err.empty()) std::fprintf(stderr, "fracheat: %s\n", err.c_str());
    return exit_code;
}
