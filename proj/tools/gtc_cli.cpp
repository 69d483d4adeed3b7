// Command-line front end: deterministic runs, CSV/JSON artifacts and a
// reproducibility manifest per invocation.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gtc/gauge_mc.hpp"
#include "gtc/homology.hpp"
#include "gtc/lattice.hpp"
#include "gtc/manifest.hpp"
#include "gtc/memory_sim.hpp"
#include "gtc/partitions.hpp"
#include "gtc/stabilizer.hpp"
#include "gtc/thermal_exact.hpp"

using nlohmann::json;
using namespace gtc;

namespace {

constexpr int kExitSchema = 2;
constexpr int kExitBudget = 3;
constexpr int kExitInternal = 4;

struct Common {
    std::string configPath;
    std::string outDir = ".";
    std::uint64_t seed = 1;
    json config = json::object();
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--config", c.configPath, "JSON config file; flags override");
    cmd->add_option("--out", c.outDir, "output directory");
    cmd->add_option("--seed", c.seed, "RNG seed");
}

void load_config(Common& c) {
    if (c.configPath.empty()) return;
    std::ifstream in(c.configPath);
    if (!in) throw std::invalid_argument("cannot open config " + c.configPath);
    in >> c.config;
}

ModelSpec model_from(const Common& c, ModelSpec flags) {
    ModelSpec m = flags;
    if (c.config.contains("model")) {
        const auto& j = c.config["model"];
        if (j.contains("D")) m.D = j["D"].get<int>();
        if (j.contains("k")) m.k = j["k"].get<int>();
        if (j.contains("L")) m.L = j["L"].get<int>();
        if (j.contains("lambda")) m.lambda = j["lambda"].get<double>();
        if (j.contains("mu")) m.mu = j["mu"].get<double>();
    }
    return m;
}

void emit(const Common& c, const std::string& command, const json& config,
          const std::vector<std::pair<std::string, std::string>>& files,
          const std::string& startedAt) {
    RunManifest man;
    man.command = command;
    man.seed = c.seed;
    man.configJson = config.dump();
    man.startedAt = startedAt;
    man.finishedAt = iso8601_now();
    for (const auto& [name, content] : files) {
        std::string path = c.outDir + "/" + name;
        write_file(path, content);
        man.outputs.emplace_back(path, digest_hex(content));
    }
    write_file(c.outDir + "/" + command + "_manifest.json", man.to_json());
}

PartitionScheme scheme_for(const Lattice& lat, int a, int k) {
    if (lat.D() == 2 && lat.L() < a + 3) return build_micro_partitions(lat);
    return build_partitions(lat, a, k);
}

json cuboid_list(const json& j) { return j.is_array() ? j : json::array(); }

std::vector<Cuboid> parse_cuboids(const json& arr, int D) {
    std::vector<Cuboid> out;
    for (const auto& item : arr) {
        Cuboid cu;
        auto lo = item.at("lo");
        auto size = item.at("size");
        if ((int)lo.size() != D || (int)size.size() != D)
            throw std::invalid_argument("cuboid lo/size must have D entries");
        for (int d = 0; d < D; ++d) {
            cu.lo[d] = lo[d].get<int>();
            cu.size[d] = size[d].get<int>();
        }
        out.push_back(cu);
    }
    return out;
}

int cmd_te0(Common& c, ModelSpec m, int a) {
    std::string started = iso8601_now();
    StabilizerCode code(m);
    // no micro fallback here: the degenerate scheme serves the thermal
    // sector only and does not carry the zero-T group identities
    PartitionScheme p = build_partitions(code.lattice(), a, m.k);
    int rankPath = code.stop_zero_rank_path(p);
    json out;
    out["model"] = {{"D", m.D}, {"k", m.k}, {"L", m.L}};
    out["a"] = p.a;
    out["degenerate_scheme"] = p.degenerate;
    out["rank_path"] = rankPath;
    if (!p.degenerate) out["betti_path"] = code.stop_zero_betti_path(p);
    out["s_top_log2"] = rankPath;
    auto parts = code.gisum_split(p);
    out["gisum"] = {{"gi_part", parts.giPart}, {"hi_part", parts.hiPart}};
    out["ground_degeneracy_log2"] = code.ground_degeneracy_log2();
    json per = json::array();
    for (const auto& e : p.entries) {
        auto o = code.group_log_orders_region(e.spinsC);
        per.push_back({{"i", e.index}, {"sign", e.sign}, {"log2_G", o.g},
                       {"log2_Gi", o.gi}, {"log2_Hi", o.hi}});
    }
    out["per_partition"] = per;
    std::string text = out.dump(2) + "\n";
    std::cout << text;
    emit(c, "te0", out["model"], {{"te0.json", text}}, started);
    return 0;
}

int cmd_betti(Common& c, ModelSpec flags) {
    std::string started = iso8601_now();
    int D = flags.D, L = flags.L;
    if (c.config.contains("model")) {
        const auto& j = c.config["model"];
        if (j.contains("D")) D = j["D"].get<int>();
        if (j.contains("L")) L = j["L"].get<int>();
    }
    Lattice lat(LatticeSpec{D, L});
    Region region = [&] {
        if (c.config.contains("region")) {
            auto inc = parse_cuboids(cuboid_list(c.config["region"]["include"]), D);
            std::vector<Cuboid> exc;
            if (c.config["region"].contains("exclude"))
                exc = parse_cuboids(cuboid_list(c.config["region"]["exclude"]), D);
            return Region::from_cuboids(lat, inc, exc);
        }
        Cuboid all;
        for (int d = 0; d < D; ++d) { all.lo[d] = 0; all.size[d] = L; }
        return Region::from_cuboids(lat, {all});
    }();
    SubComplex s = subcomplex(lat, region);
    BettiVector b = betti(s);
    json out;
    out["model"] = {{"D", D}, {"L", L}};
    out["b"] = b.b;
    if (!s.empty()) {
        BettiVector br = reduced_betti(s);
        out["b_reduced"] = br.b;
    }
    json counts = json::array();
    for (int j = 0; j <= D; ++j) counts.push_back(s.count(j));
    out["cells"] = counts;
    std::string text = out.dump(2) + "\n";
    std::cout << text;
    emit(c, "betti", out["model"], {{"betti.json", text}}, started);
    return 0;
}

int cmd_partitions(Common& c, ModelSpec m, int a) {
    std::string started = iso8601_now();
    Lattice lat(LatticeSpec{m.D, m.L});
    PartitionScheme p = scheme_for(lat, a, m.k);
    json out;
    out["model"] = {{"D", m.D}, {"k", m.k}, {"L", m.L}};
    out["a"] = p.a;
    out["degenerate_scheme"] = p.degenerate;
    json entries = json::array();
    for (const auto& e : p.entries) {
        json cells = json::array();
        for (std::size_t i = 0; i < e.spinsC.size(); ++i)
            if (e.spinsC.get(i)) cells.push_back(i);
        entries.push_back({{"i", e.index}, {"sign", e.sign}, {"spins_c", cells}});
    }
    out["entries"] = entries;
    auto rep = verify_cancellation(lat, p);
    out["cancellation"] = {{"pass", rep.pass}, {"detail", rep.detail}};
    std::string text = out.dump(2) + "\n";
    std::cout << text;
    emit(c, "partitions", out["model"], {{"partitions.json", text}}, started);
    return 0;
}

int cmd_thermal(Common& c, ModelSpec m, int a, std::vector<double> betas) {
    std::string started = iso8601_now();
    if (c.config.contains("betas"))
        betas = c.config["betas"].get<std::vector<double>>();
    if (betas.empty()) throw std::invalid_argument("thermal-exact: no beta grid");

    GaugeSector plaqSector(m);
    GaugeSector starSector(m.dual());
    PartitionScheme pPlaq = scheme_for(plaqSector.code().lattice(), a, m.k);
    PartitionScheme pStar = scheme_for(starSector.code().lattice(), a, m.D - m.k);

    std::ostringstream csv;
    csv << "beta,Z,W,Qtop_routeA,Qtop_routeB,Stop_nats,Stop_log2units\n";
    for (double beta : betas) {
        ThermalParams t{beta};
        t.validate();
        double bm = beta * m.mu;
        QtopResult q = plaqSector.qtop(pPlaq, bm);
        StopFiniteT st = stop_finite_T(plaqSector, starSector, pPlaq, pStar,
                                       beta, m.lambda, m.mu);
        csv << fmt_double(beta) << ',' << fmt_double(plaqSector.Z(bm)) << ','
            << fmt_double(plaqSector.W(bm)) << ',' << fmt_double(q.routeA) << ','
            << fmt_double(q.routeB) << ',' << fmt_double(st.stopNats) << ','
            << fmt_double(st.stopLog2) << '\n';
    }
    json cfg = {{"model", {{"D", m.D}, {"k", m.k}, {"L", m.L},
                           {"lambda", m.lambda}, {"mu", m.mu}}},
                {"a", pPlaq.a},
                {"degenerate_scheme", pPlaq.degenerate},
                {"betas", betas}};
    std::cout << csv.str();
    emit(c, "thermal-exact", cfg, {{"thermal_exact.csv", csv.str()}}, started);
    return 0;
}

int cmd_mc(Common& c, ModelSpec m, MCParams p) {
    std::string started = iso8601_now();
    if (c.config.contains("mc")) {
        const auto& j = c.config["mc"];
        if (j.contains("sweeps")) p.sweeps = j["sweeps"].get<int>();
        if (j.contains("thermalization")) p.thermalization = j["thermalization"].get<int>();
        if (j.contains("stride")) p.stride = j["stride"].get<int>();
        if (j.contains("chains")) p.chains = j["chains"].get<int>();
        if (j.contains("grid")) p.betaMuGrid = j["grid"].get<std::vector<double>>();
    }
    p.seed = c.seed;
    p.validate();
    if (p.betaMuGrid.empty()) throw std::invalid_argument("mc: empty betaMu grid");

    GaugeModel gm(m);
    std::ostringstream csv;
    csv << "betaMu,observable,value,error,tau_int,samples\n";
    for (std::size_t gi = 0; gi < p.betaMuGrid.size(); ++gi) {
        double bm = p.betaMuGrid[gi];
        std::vector<long long> all;
        double tau = 0.0;
        EnergyObservables agg;
        std::vector<double> energies, heats;
        for (int chain = 0; chain < p.chains; ++chain) {
            auto series = run_chain(gm, bm, p, (int)gi, chain);
            auto o = energy_observables(gm, series, bm, chain);
            energies.push_back(o.energyPerPlaquette);
            heats.push_back(o.specificHeat);
            tau += o.tauInt;
            agg = o;
        }
        auto meanErr = [](const std::vector<double>& v) {
            double mean = 0;
            for (double x : v) mean += x;
            mean /= v.size();
            double var = 0;
            for (double x : v) var += (x - mean) * (x - mean);
            double err = v.size() > 1 ? std::sqrt(var / (v.size() * (v.size() - 1)))
                                      : 0.0;
            return std::pair<double, double>(mean, err);
        };
        auto [em, ee] = meanErr(energies);
        auto [cm, ce] = meanErr(heats);
        if (p.chains == 1) { ee = agg.energyError; ce = agg.specificHeatError; }
        csv << fmt_double(bm) << ",energy_per_plaquette," << fmt_double(em) << ','
            << fmt_double(ee) << ',' << fmt_double(tau / p.chains) << ','
            << agg.samples * p.chains << '\n';
        csv << fmt_double(bm) << ",specific_heat," << fmt_double(cm) << ','
            << fmt_double(ce) << ',' << fmt_double(tau / p.chains) << ','
            << agg.samples * p.chains << '\n';
    }
    json cfg = {{"model", {{"D", m.D}, {"k", m.k}, {"L", m.L}}},
                {"mc", {{"sweeps", p.sweeps}, {"thermalization", p.thermalization},
                        {"stride", p.stride}, {"chains", p.chains},
                        {"grid", p.betaMuGrid}}},
                {"seed", p.seed}};
    std::cout << csv.str();
    emit(c, "mc", cfg, {{"mc.csv", csv.str()}}, started);
    return 0;
}

int cmd_memory(Common& c, ModelSpec m, std::string sector, double t,
               std::vector<int> sizes, int trials, long long maxSweeps) {
    std::string started = iso8601_now();
    if (sizes.empty()) throw std::invalid_argument("memory: empty L list");
    bool runA = sector == "a" || sector == "both";
    bool runB = sector == "b" || sector == "both";
    if (!runA && !runB)
        throw std::invalid_argument("memory: sector must be a, b or both");

    json out;
    out["model"] = {{"D", m.D}, {"k", m.k}, {"L_list", sizes}};
    out["t_over_coupling"] = t;
    std::ostringstream csv;
    csv << "sector,L,trial,first_flip_sweeps,censored\n";
    Trend ta = Trend::Inconclusive, tb = Trend::Inconclusive;
    for (int which = 0; which < 2; ++which) {
        if ((which == 0 && !runB) || (which == 1 && !runA)) continue;
        Sector s = which == 0 ? Sector::BDefect : Sector::ADefect;
        const char* name = which == 0 ? "b" : "a";
        LifetimeReport rep =
            lifetime_estimate(m, s, t, sizes, trials, maxSweeps, c.seed);
        for (std::size_t li = 0; li < rep.perL.size(); ++li)
            for (std::size_t tr = 0; tr < rep.trialSweeps[li].size(); ++tr)
                csv << name << ',' << rep.perL[li].L << ',' << tr << ','
                    << fmt_double(rep.trialSweeps[li][tr]) << ','
                    << (int)rep.trialCensored[li][tr] << '\n';
        json perL = json::array();
        for (const auto& st : rep.perL)
            perL.push_back({{"L", st.L}, {"trials", st.trials},
                            {"events", st.events},
                            {"mean_sweeps", st.meanSweeps}, {"se", st.se},
                            {"all_censored", st.allCensored}});
        out[std::string("sector_") + name] = {
            {"trend", to_string(rep.trend)}, {"per_L", perL}};
        (which == 0 ? tb : ta) = rep.trend;
    }
    if (runA && runB)
        out["memory_class"] = to_string(memory_classification(ta, tb));
    std::string text = out.dump(2) + "\n";
    std::cout << text;
    emit(c, "memory", out["model"],
         {{"memory.csv", csv.str()}, {"memory.json", text}}, started);
    return 0;
}

int cmd_duality(Common& c, ModelSpec m, double beta) {
    std::string started = iso8601_now();
    DualityReport r = duality_check(m, ThermalParams{beta});
    json out;
    out["model"] = {{"D", m.D}, {"k", m.k}, {"L", m.L},
                    {"lambda", m.lambda}, {"mu", m.mu}, {"beta", beta}};
    out["z_primal"] = r.zPrimal;
    out["z_dual"] = r.zDual;
    out["rel_diff"] = r.relDiff;
    out["pass"] = r.pass;
    std::string text = out.dump(2) + "\n";
    std::cout << text;
    emit(c, "duality-check", out["model"], {{"duality_check.json", text}}, started);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"generalized toric codes on the D-torus"};
    app.require_subcommand(1);

    Common common;
    ModelSpec m;
    int a = 6;
    std::vector<double> betas;
    MCParams mcp;
    std::string sector = "both";
    double tRatio = 0.6, beta = 0.2;
    std::vector<int> sizes;
    int trials = 20;
    long long maxSweeps = 100000;

    auto addModel = [&](CLI::App* cmd, bool needK = true) {
        cmd->add_option("--D", m.D, "spatial dimension");
        if (needK) cmd->add_option("--k", m.k, "spin-cell dimension");
        cmd->add_option("--L", m.L, "linear lattice size");
        cmd->add_option("--lambda", m.lambda, "star coupling");
        cmd->add_option("--mu", m.mu, "plaquette coupling");
        add_common(cmd, common);
    };

    auto* te0 = app.add_subcommand("te0", "zero-temperature topological entropy");
    addModel(te0);
    te0->add_option("--a", a, "partition box side (multiple of 3)");

    auto* bet = app.add_subcommand("betti", "Betti numbers of a region");
    addModel(bet, false);

    auto* par = app.add_subcommand("partitions", "emit the signed partition scheme");
    addModel(par);
    par->add_option("--a", a, "partition box side (multiple of 3)");

    auto* th = app.add_subcommand("thermal-exact", "exact finite-T quantities");
    addModel(th);
    th->add_option("--a", a, "partition box side");
    th->add_option("--beta", betas, "inverse-temperature grid");

    auto* mc = app.add_subcommand("mc", "gauge-sector Monte Carlo");
    addModel(mc);
    mc->add_option("--grid", mcp.betaMuGrid, "betaMu grid");
    mc->add_option("--sweeps", mcp.sweeps, "measured sweeps");
    mc->add_option("--therm", mcp.thermalization, "thermalization sweeps");
    mc->add_option("--stride", mcp.stride, "measurement stride");
    mc->add_option("--chains", mcp.chains, "independent chains");

    auto* mem = app.add_subcommand("memory", "memory-lifetime trends");
    addModel(mem);
    mem->add_option("--sector", sector, "a, b or both");
    mem->add_option("--t", tRatio, "temperature over sector coupling");
    mem->add_option("--L-list", sizes, "lattice sizes");
    mem->add_option("--trials", trials, "trials per size");
    mem->add_option("--max-sweeps", maxSweeps, "censoring horizon (sweeps)");

    auto* du = app.add_subcommand("duality-check", "full-code partition duality");
    addModel(du);
    du->add_option("--beta", beta, "inverse temperature");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        load_config(common);
        m = model_from(common, m);
        if (te0->parsed()) return cmd_te0(common, m, a);
        if (bet->parsed()) return cmd_betti(common, m);
        if (par->parsed()) return cmd_partitions(common, m, a);
        if (th->parsed()) return cmd_thermal(common, m, a, betas);
        if (mc->parsed()) return cmd_mc(common, m, mcp);
        if (mem->parsed())
            return cmd_memory(common, m, sector, tRatio,
                              sizes.empty() ? std::vector<int>{m.L} : sizes,
                              trials, maxSweeps);
        if (du->parsed()) return cmd_duality(common, m, beta);
    } catch (const BudgetError& e) {
        std::cerr << json{{"error", {{"type", "budget"}, {"message", e.what()}}}}.dump()
                  << "\n";
        return kExitBudget;
    } catch (const std::invalid_argument& e) {
        std::cerr << json{{"error", {{"type", "schema"}, {"message", e.what()}}}}.dump()
                  << "\n";
        return kExitSchema;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", {{"type", "internal"}, {"message", e.what()}}}}.dump()
                  << "\n";
        return kExitInternal;
    }
    return 0;
}
