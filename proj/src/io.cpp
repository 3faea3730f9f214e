#include "rt/io.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace rt {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string stem_of(const std::string& path) {
  const std::size_t dot = path.rfind('.');
  const std::size_t slash = path.rfind('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path;
  return path.substr(0, dot);
}

void write_row_1d(std::ofstream& out, double x, double Tm, double Tr,
                  const double* rho, int G) {
  out << num(x) << ',' << num(Tm) << ',' << num(Tr);
  if (rho)
    for (int g = 0; g < G; ++g) out << ',' << num(rho[g]);
  out << '\n';
}

void header_1d(std::ofstream& out, bool groups, int G) {
  out << "x_center,T_material,T_radiation";
  if (groups)
    for (int g = 0; g < G; ++g) out << ",rho_" << g;
  out << '\n';
}

}  // namespace

void write_snapshot(const std::string& path, const Problem& pb, const SimState& st,
                    bool include_groups, const std::vector<double>& lineouts_y) {
  const Mesh& m = pb.mesh;
  const int G = pb.grid.groups();
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write snapshot: " + path);
  if (m.dim() == 1) {
    header_1d(out, include_groups, G);
    for (int i = 0; i < m.ncells(); ++i)
      write_row_1d(out, m.cx(i), st.T[i], st.Tr[i],
                   include_groups ? st.rho.data() + std::size_t(i) * G : nullptr, G);
    return;
  }

  out << "x_center,y_center,T_material,T_radiation";
  if (include_groups)
    for (int g = 0; g < G; ++g) out << ",rho_" << g;
  out << '\n';
  for (int i = 0; i < m.ncells(); ++i) {
    out << num(m.cx(i)) << ',' << num(m.cy(i)) << ',' << num(st.T[i]) << ','
        << num(st.Tr[i]);
    if (include_groups)
      for (int g = 0; g < G; ++g) out << ',' << num(st.rho[std::size_t(i) * G + g]);
    out << '\n';
  }

  for (double y : lineouts_y) {
    // nearest cell row; a request at the top edge maps to the last row
    int iy = static_cast<int>(std::floor(y / m.hy()));
    if (iy < 0) iy = 0;
    if (iy >= m.ny()) iy = m.ny() - 1;
    char tag[32];
    std::snprintf(tag, sizeof tag, "_y%g.csv", y);
    std::ofstream lout(stem_of(path) + tag);
    if (!lout) throw std::runtime_error("cannot write lineout for " + path);
    header_1d(lout, include_groups, G);
    for (int ix = 0; ix < m.nx(); ++ix) {
      const int i = m.cell_index_2d(ix, iy);
      write_row_1d(lout, m.cx(i), st.T[i], st.Tr[i],
                   include_groups ? st.rho.data() + std::size_t(i) * G : nullptr, G);
    }
  }
}

ReplicaStats figure_of_merit(const RunConfig& rc, int replicas) {
  if (replicas < 2) throw std::invalid_argument("figure_of_merit: need >= 2 replicas");
  ReplicaStats rs;
  rs.replicas = replicas;
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<std::vector<double>> Ts, Trs;
  int n = 0;
  for (int r = 0; r < replicas; ++r) {
    RunConfig rr = rc;
    rr.seed = rc.seed + static_cast<std::uint64_t>(r);
    const Problem pb = build_problem(rr);
    SimState st = init_state(pb);
    run_simulation(pb, st);
    n = pb.mesh.ncells();
    Ts.push_back(st.T);
    Trs.push_back(st.Tr);
  }
  rs.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  auto stats = [&](const std::vector<std::vector<double>>& s, std::vector<double>& mean,
                   std::vector<double>& var) {
    mean.assign(n, 0.0);
    var.assign(n, 0.0);
    for (const auto& v : s)
      for (int i = 0; i < n; ++i) mean[i] += v[i];
    for (int i = 0; i < n; ++i) mean[i] /= replicas;
    for (const auto& v : s)
      for (int i = 0; i < n; ++i) var[i] += (v[i] - mean[i]) * (v[i] - mean[i]);
    for (int i = 0; i < n; ++i) var[i] /= (replicas - 1);
  };
  stats(Ts, rs.mean_T, rs.var_T);
  stats(Trs, rs.mean_Tr, rs.var_Tr);

  auto fom = [&](const std::vector<double>& var) {
    double vbar = 0.0;
    for (double v : var) vbar += v;
    vbar /= n;
    if (vbar <= 0.0 || rs.wall_seconds <= 0.0)
      return std::numeric_limits<double>::infinity();
    return 1.0 / (vbar * rs.wall_seconds);
  };
  rs.fom_T = fom(rs.var_T);
  rs.fom_Tr = fom(rs.var_Tr);
  return rs;
}

void write_fom_csv(const std::string& path, const Problem& pb, const ReplicaStats& rs) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write report: " + path);
  out << "x_center,mean_T_material,var_T_material,mean_T_radiation,var_T_radiation\n";
  for (int i = 0; i < pb.mesh.ncells(); ++i)
    out << num(pb.mesh.cx(i)) << ',' << num(rs.mean_T[i]) << ',' << num(rs.var_T[i])
        << ',' << num(rs.mean_Tr[i]) << ',' << num(rs.var_Tr[i]) << '\n';
  out << "# replicas=" << rs.replicas << " wall_seconds=" << num(rs.wall_seconds)
      << " fom_T_material=" << num(rs.fom_T) << " fom_T_radiation=" << num(rs.fom_Tr)
      << '\n';
}

void write_plot_script(const std::string& csv_path, int dim) {
  const std::string stem = stem_of(csv_path);
  std::ofstream out(stem + ".gp");
  if (!out) throw std::runtime_error("cannot write plot script for " + csv_path);
  out << "set datafile separator ','\n";
  if (dim == 1) {
    out << "set xlabel 'x [cm]'\nset ylabel 'T [keV]'\n"
        << "set terminal pngcairo size 900,600\nset output '" << stem << ".png'\n"
        << "plot '" << csv_path << "' using 1:2 skip 1 with lines title 'material', \\\n"
        << "     '" << csv_path << "' using 1:3 skip 1 with lines title 'radiation'\n";
  } else {
    out << "set xlabel 'x [cm]'\nset ylabel 'y [cm]'\nset view map\n"
        << "set terminal pngcairo size 1000,600\nset output '" << stem << ".png'\n"
        << "splot '" << csv_path << "' using 1:2:3 skip 1 with points pt 5 ps 0.6 "
           "palette title 'T material'\n";
  }
}

}  // namespace rt
