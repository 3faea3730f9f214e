#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rt/config.hpp"
#include "rt/io.hpp"

namespace {

int run_config(const rt::RunConfig& rc, const std::string& out_path, bool quiet,
               std::vector<double>* final_T = nullptr) {
  const rt::Problem pb = rt::build_problem(rc);
  rt::SimState st = rt::init_state(pb);
  const int every = rc.snapshot_every;
  int snap_id = 0;
  auto on_step = [&](const rt::SimState& s, const rt::StepReport& rep) {
    if (!quiet)
      std::printf("step %5llu  t=%.6f  picard=%2d  balance=%.3e\n",
                  static_cast<unsigned long long>(s.step), s.t, rep.picard_iters,
                  rep.conservation_error);
    if (every > 0 && s.step % static_cast<unsigned>(every) == 0 && !out_path.empty()) {
      char tag[32];
      std::snprintf(tag, sizeof tag, ".step%05llu",
                    static_cast<unsigned long long>(s.step));
      const std::size_t dot = out_path.rfind('.');
      const std::string p = (dot == std::string::npos)
                                ? out_path + tag
                                : out_path.substr(0, dot) + tag + out_path.substr(dot);
      rt::write_snapshot(p, pb, s, rc.snapshot_groups, rc.lineouts_y);
    }
  };
  rt::run_simulation(pb, st, on_step);
  if (!out_path.empty()) {
    rt::write_snapshot(out_path, pb, st, rc.snapshot_groups, rc.lineouts_y);
    rt::write_plot_script(out_path, pb.mesh.dim());
  }
  if (!quiet) {
    double tmin = 1e300, tmax = -1e300;
    for (double t : st.T) {
      tmin = std::min(tmin, t);
      tmax = std::max(tmax, t);
    }
    std::printf("done: t=%.6f  T in [%.6g, %.6g]  injected=%.6g GJ  leaked=%.6g GJ\n",
                st.t, tmin, tmax, st.injected, st.leaked);
    if (st.floor_warnings > 0)
      std::printf("warning: temperature floored in %d updates\n", st.floor_warnings);
  }
  if (final_T) *final_T = st.T;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"frequency-dependent thermal radiative transfer solver"};
  app.require_subcommand(1);

  std::string cfg_path, out_path = "snapshot.csv", preset_name, cfg_b;
  bool desk = false, print_cfg = false, quiet = false;
  int replicas = 4, threads = 0;
  long long budget = -1;
  std::uint64_t seed = 0;
  bool have_seed = false;

  auto add_common = [&](CLI::App* c) {
    c->add_option("-o,--out", out_path, "snapshot CSV path (empty disables output)");
    c->add_option("--threads", threads, "override tracking thread count");
    c->add_option("--seed", seed, "override RNG seed")->each([&](const std::string&) {
      have_seed = true;
    });
    c->add_option("--budget", budget, "override particles per step");
    c->add_flag("-q,--quiet", quiet, "suppress per-step output");
  };

  CLI::App* c_run = app.add_subcommand("run", "run a simulation from a JSON config");
  c_run->add_option("config", cfg_path, "JSON config file")->required();
  add_common(c_run);

  CLI::App* c_pre = app.add_subcommand("preset", "run a named benchmark preset");
  c_pre->add_option("name", preset_name, "preset name")->required();
  c_pre->add_flag("--desk", desk, "use the reduced desk-scale profile");
  c_pre->add_flag("--print-config", print_cfg, "print the preset's JSON config and exit");
  c_pre->add_option("--solver", cfg_b, "override solver (emc|imc|diffusion)");
  add_common(c_pre);

  CLI::App* c_fom = app.add_subcommand("fom", "replica variance / figure-of-merit study");
  c_fom->add_option("config", cfg_path, "JSON config file")->required();
  c_fom->add_option("-r,--replicas", replicas, "number of replicas")->check(CLI::Range(2, 1000));
  add_common(c_fom);

  CLI::App* c_cmp = app.add_subcommand("compare", "run two configs and report T differences");
  c_cmp->add_option("config_a", cfg_path, "first JSON config")->required();
  c_cmp->add_option("config_b", cfg_b, "second JSON config")->required();
  add_common(c_cmp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? 1 : 0;
  }

  try {
    auto apply_overrides = [&](rt::RunConfig& rc) {
      if (threads > 0) rc.threads = threads;
      if (have_seed) rc.seed = seed;
      if (budget >= 0) rc.budget = budget;
    };

    if (c_run->parsed()) {
      rt::RunConfig rc = rt::parse_config_file(cfg_path);
      apply_overrides(rc);
      return run_config(rc, out_path, quiet);
    }
    if (c_pre->parsed()) {
      rt::RunConfig rc = rt::preset(preset_name, desk);
      if (!cfg_b.empty()) rc.solver = cfg_b;
      apply_overrides(rc);
      if (print_cfg) {
        std::cout << rt::serialize_config(rc);
        return 0;
      }
      return run_config(rc, out_path, quiet);
    }
    if (c_fom->parsed()) {
      rt::RunConfig rc = rt::parse_config_file(cfg_path);
      apply_overrides(rc);
      const rt::ReplicaStats rs = rt::figure_of_merit(rc, replicas);
      if (!out_path.empty()) rt::write_fom_csv(out_path, rt::build_problem(rc), rs);
      std::printf("replicas=%d wall=%.3fs fom_T_material=%g fom_T_radiation=%g\n",
                  rs.replicas, rs.wall_seconds, rs.fom_T, rs.fom_Tr);
      return 0;
    }
    if (c_cmp->parsed()) {
      rt::RunConfig ra = rt::parse_config_file(cfg_path);
      rt::RunConfig rb = rt::parse_config_file(cfg_b);
      apply_overrides(ra);
      apply_overrides(rb);
      std::vector<double> Ta, Tb;
      run_config(ra, "", true, &Ta);
      run_config(rb, "", true, &Tb);
      if (Ta.size() != Tb.size()) {
        std::cerr << "compare: meshes differ (" << Ta.size() << " vs " << Tb.size()
                  << " cells)\n";
        return 1;
      }
      double l1 = 0.0, linf = 0.0, ref = 0.0;
      for (std::size_t i = 0; i < Ta.size(); ++i) {
        l1 += std::abs(Ta[i] - Tb[i]);
        linf = std::max(linf, std::abs(Ta[i] - Tb[i]));
        ref += std::abs(Ta[i]);
      }
      std::printf("cells=%zu L1=%.6e Linf=%.6e relative_L1=%.6e\n", Ta.size(), l1, linf,
                  l1 / std::max(ref, 1e-300));
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
