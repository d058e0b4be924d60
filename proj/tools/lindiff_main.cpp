// Command-line surface over the library: every verdict and estimate printed
// here is a direct library call, no logic of its own.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "lindiff/boundary.hpp"
#include "lindiff/chain.hpp"
#include "lindiff/simulate.hpp"
#include "lindiff/spec_io.hpp"

namespace {

using nlohmann::json;
using namespace lindiff;

constexpr int kExitOk = 0;
constexpr int kExitVerdictMismatch = 1;
constexpr int kExitInputError = 2;

std::string fmt(double v) {
    if (v == kInf) return "inf";
    if (v == -kInf) return "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

json tri_json(TriBool t) {
    if (t == TriBool::Unknown) return "unknown";
    return t == TriBool::Yes;
}

void emit(const json& report, bool pretty) {
    if (pretty) {
        std::cout << report.dump(2) << "\n";
    } else {
        std::cout << dump_canonical(report);
    }
}

json classify_report(const DiffusionSpec& spec) {
    json sides;
    for (Side side : {Side::Left, Side::Right}) {
        BoundaryClass bc = classify(spec, side);
        sides[side == Side::Left ? "left" : "right"] = json{
            {"class", to_string(bc.klass)}, {"dissipative", tri_json(bc.dissipative)}};
    }
    json out = sides;
    out["recurrent"] = tri_json(is_recurrent(spec));
    out["conservative"] = tri_json(is_conservative(spec));
    out["strongly_local"] = is_zero_measure(spec.killing);
    TriBool rec = is_recurrent(spec);
    out["transient"] = tri_json(tri_not(rec));
    return out;
}

std::string hitting_csv_row(const std::string& spec_id, double a, double x, double b, long n,
                            const HittingEstimate& est) {
    std::string row;
    row += spec_id + "," + fmt(a) + "," + fmt(x) + "," + fmt(b) + "," + std::to_string(n) + ",";
    row += fmt(est.p_hat) + "," + fmt(est.ci_halfwidth) + "," + fmt(est.formula_p) + ",";
    row += est.pass ? "1" : "0";
    return row;
}

int expect_gate(const std::string& expect, const std::string& got) {
    if (expect.empty() || expect == got) return kExitOk;
    std::cerr << "expected verdict '" << expect << "' but got '" << got << "'\n";
    return kExitVerdictMismatch;
}

FiniteChain chain_from_json(const json& j) {
    FiniteChain chain;
    chain.n = j.at("n").get<int>();
    for (const auto& row : j.at("q")) {
        for (const auto& v : row) chain.q.push_back(v.get<double>());
    }
    validate(chain);
    return chain;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"one-dimensional diffusions as (scale, speed, killing) triples"};
    app.require_subcommand(1);
    bool pretty = false;
    app.add_flag("--pretty", pretty, "indent JSON output for humans");

    // example
    auto* cmd_example = app.add_subcommand("example", "emit a named example spec");
    std::string example_name, example_out;
    bool example_signed = false;
    cmd_example->add_option("name", example_name,
                            "brownian_line | brownian_01 | cantor_scale | rational_windows")
        ->required();
    cmd_example->add_flag("--signed", example_signed, "signed rational-window variant on R");
    cmd_example->add_option("-o,--output", example_out, "write to file instead of stdout");

    // classify
    auto* cmd_classify = app.add_subcommand("classify", "boundary classification report");
    std::string classify_path;
    cmd_classify->add_option("spec", classify_path, "spec JSON file")->required();

    // hitting
    auto* cmd_hitting = app.add_subcommand("hitting", "Monte Carlo hitting-probability check");
    std::string hitting_path;
    double hit_a = 0, hit_x = 0, hit_b = 0, hit_step = 0;
    long hit_n = 0;
    std::uint64_t hit_seed = 0;
    cmd_hitting->add_option("spec", hitting_path)->required();
    cmd_hitting->add_option("--a", hit_a, "left target")->required();
    cmd_hitting->add_option("--x", hit_x, "start point")->required();
    cmd_hitting->add_option("--b", hit_b, "right target")->required();
    cmd_hitting->add_option("--n", hit_n, "number of paths")->required();
    cmd_hitting->add_option("--seed", hit_seed, "RNG seed (required: no wall-clock entropy)")
        ->required();
    cmd_hitting->add_option("--step-h", hit_step, "natural-scale lattice step");

    // simulate
    auto* cmd_simulate = app.add_subcommand("simulate", "exit-time or survival estimate");
    std::string sim_path, sim_estimate = "exit";
    double sim_a = 0, sim_b = 0, sim_x0 = 0, sim_step = 0, sim_horizon = 0;
    long sim_n = 0;
    std::uint64_t sim_seed = 0;
    cmd_simulate->add_option("spec", sim_path)->required();
    cmd_simulate->add_option("--estimate", sim_estimate, "exit | survival");
    cmd_simulate->add_option("--x0", sim_x0, "start point")->required();
    cmd_simulate->add_option("--a", sim_a, "left window edge (exit)");
    cmd_simulate->add_option("--b", sim_b, "right window edge (exit)");
    cmd_simulate->add_option("--horizon", sim_horizon, "time horizon (survival)");
    cmd_simulate->add_option("--n", sim_n, "number of paths")->required();
    cmd_simulate->add_option("--seed", sim_seed, "RNG seed")->required();
    cmd_simulate->add_option("--step-h", sim_step, "natural-scale lattice step");

    // energy
    auto* cmd_energy = app.add_subcommand("energy", "Dirichlet energy E(u, v)");
    std::string energy_path, energy_u, energy_v;
    double energy_tol = 1e-9;
    cmd_energy->add_option("spec", energy_path)->required();
    cmd_energy->add_option("--u", energy_u, "form function JSON file")->required();
    cmd_energy->add_option("--v", energy_v, "second form (defaults to u)");
    cmd_energy->add_option("--tol", energy_tol, "certified tolerance");

    // membership
    auto* cmd_member = app.add_subcommand("membership", "form-domain membership");
    std::string member_path, member_u, member_scale, member_variant = "full", member_expect;
    cmd_member->add_option("spec", member_path)->required();
    cmd_member->add_option("--u", member_u, "form function JSON file")->required();
    cmd_member->add_option("--u-scale", member_scale,
                           "spec file whose scale governs u (defaults to the target spec)");
    cmd_member->add_option("--variant", member_variant, "full | zero_boundary");
    cmd_member->add_option("--expect", member_expect, "yes | no (exit 1 on mismatch)");

    // subspace
    auto* cmd_subspace = app.add_subcommand("subspace", "regular-subspace decision");
    std::string sub_path, sup_path, subspace_expect;
    cmd_subspace->add_option("--sub", sub_path, "candidate subspace spec")->required();
    cmd_subspace->add_option("--sup", sup_path, "ambient spec")->required();
    cmd_subspace->add_option("--expect", subspace_expect, "yes | no (exit 1 on mismatch)");

    // chain-check
    auto* cmd_chain = app.add_subcommand("chain-check", "finite-chain diagnostics");
    std::string chain_file, chain_spec, chain_grid;
    double chain_alpha = 1.0;
    cmd_chain->add_option("--chain", chain_file, "chain JSON file {n, q: [[...]]}");
    cmd_chain->add_option("--spec", chain_spec, "spec JSON file (with --grid)");
    cmd_chain->add_option("--grid", chain_grid, "comma-separated grid points");
    cmd_chain->add_option("--alpha", chain_alpha, "resolvent parameter");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*cmd_example) {
            SpecFile spec = build_named_example(example_name, example_signed);
            if (example_out.empty()) {
                std::cout << dump_canonical(to_json(spec));
            } else {
                save_spec_file(spec, example_out);
            }
            return kExitOk;
        }

        if (*cmd_classify) {
            SpecFile spec = load_spec_file(classify_path);
            emit(classify_report(spec.spec), pretty);
            return kExitOk;
        }

        if (*cmd_hitting) {
            SpecFile spec = load_spec_file(hitting_path);
            SimConfig cfg;
            cfg.seed = hit_seed;
            if (hit_step > 0) cfg.step_h = hit_step;
            HittingEstimate est = estimate_hitting(spec.spec, hit_a, hit_x, hit_b, hit_n, cfg);
            std::cout << "spec_id,a,x,b,n,p_hat,ci,formula_p,pass\n";
            std::cout << hitting_csv_row(spec.name, hit_a, hit_x, hit_b, hit_n, est) << "\n";
            return est.too_many_censored ? kExitVerdictMismatch : kExitOk;
        }

        if (*cmd_simulate) {
            SpecFile spec = load_spec_file(sim_path);
            SimConfig cfg;
            cfg.seed = sim_seed;
            if (sim_step > 0) cfg.step_h = sim_step;
            if (sim_estimate == "exit") {
                ExitTimeEstimate est =
                    estimate_exit_time(spec.spec, sim_a, sim_x0, sim_b, sim_n, cfg);
                std::cout << "spec_id,estimate,x0,a,b,n,value,stderr,censored\n";
                std::cout << spec.name << ",exit," << fmt(sim_x0) << "," << fmt(sim_a) << ","
                          << fmt(sim_b) << "," << sim_n << "," << fmt(est.mean) << ","
                          << fmt(est.stderr_) << "," << est.censored << "\n";
            } else if (sim_estimate == "survival") {
                if (!(sim_horizon > 0)) throw InvalidArgument("survival needs --horizon > 0");
                SurvivalEstimate est = estimate_survival(spec.spec, sim_x0, sim_horizon, sim_n, cfg);
                std::cout << "spec_id,estimate,x0,horizon,n,value,indeterminate\n";
                std::cout << spec.name << ",survival," << fmt(sim_x0) << "," << fmt(sim_horizon)
                          << "," << sim_n << "," << fmt(est.fraction) << "," << est.indeterminate
                          << "\n";
            } else {
                throw InvalidArgument("--estimate must be exit or survival");
            }
            return kExitOk;
        }

        if (*cmd_energy) {
            SpecFile spec = load_spec_file(energy_path);
            std::ifstream uin(energy_u);
            if (!uin) throw InvalidArgument("cannot open form file: " + energy_u);
            FormFunction u = form_from_json(json::parse(uin));
            FormFunction v = u;
            if (!energy_v.empty()) {
                std::ifstream vin(energy_v);
                if (!vin) throw InvalidArgument("cannot open form file: " + energy_v);
                v = form_from_json(json::parse(vin));
            }
            Approx e = energy(spec.spec, u, v, energy_tol);
            emit(json{{"energy", e.value}, {"error", e.error}}, pretty);
            return kExitOk;
        }

        if (*cmd_member) {
            SpecFile spec = load_spec_file(member_path);
            ScaleFunction governing = spec.spec.scale;
            if (!member_scale.empty()) governing = load_spec_file(member_scale).spec.scale;
            std::ifstream uin(member_u);
            if (!uin) throw InvalidArgument("cannot open form file: " + member_u);
            FormFunction u = form_from_json(json::parse(uin));
            MembershipVariant variant = member_variant == "zero_boundary"
                                            ? MembershipVariant::ZeroBoundary
                                            : MembershipVariant::Full;
            VerdictReport rep = membership(spec.spec, governing, u, variant);
            emit(json{{"verdict", to_string(rep.verdict)}, {"reason", rep.reason}}, pretty);
            return expect_gate(member_expect, to_string(rep.verdict));
        }

        if (*cmd_subspace) {
            SpecFile sub = load_spec_file(sub_path);
            SpecFile sup = load_spec_file(sup_path);
            VerdictReport rep = is_regular_subspace(sub.spec, sup.spec);
            emit(json{{"verdict", to_string(rep.verdict)}, {"reason", rep.reason}}, pretty);
            return expect_gate(subspace_expect, to_string(rep.verdict));
        }

        if (*cmd_chain) {
            FiniteChain chain;
            if (!chain_file.empty()) {
                std::ifstream in(chain_file);
                if (!in) throw InvalidArgument("cannot open chain file: " + chain_file);
                chain = chain_from_json(json::parse(in));
            } else if (!chain_spec.empty() && !chain_grid.empty()) {
                SpecFile spec = load_spec_file(chain_spec);
                std::vector<double> grid;
                std::stringstream ss(chain_grid);
                std::string tok;
                while (std::getline(ss, tok, ',')) grid.push_back(std::stod(tok));
                chain = discretize(spec.spec, grid);
            } else {
                throw InvalidArgument("chain-check needs --chain or --spec with --grid");
            }
            Lemma21Report rep = lemma21_report(chain, chain_alpha);
            json out{{"n", chain.n},
                     {"irreducible", rep.irreducible},
                     {"columns_all_positive", rep.columns_all_positive},
                     {"columns_zero_or_positive", rep.columns_zero_or_positive},
                     {"consistent", rep.consistent}};
            try {
                MeasureCone cone = symmetrizing_basis(chain);
                out["cone_dimension"] = cone.dimension();
            } catch (const EmptyCone&) {
                out["cone_dimension"] = 0;
            }
            emit(out, pretty);
            return kExitOk;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitOk;
}
