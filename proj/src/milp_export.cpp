#include "hcg/milp_export.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "hcg/errors.hpp"

namespace hcg {

int milp_vehicle_count(const FleetInstance& inst) {
  long total = 0;
  for (const auto& vc : inst.classes) total += vc.n_max;
  return static_cast<int>(std::min<long>(total, static_cast<long>(inst.tour_count())));
}

namespace {

std::string z(int c, int v) { return "z_" + std::to_string(c) + "_" + std::to_string(v); }
std::string x(int c, int k) { return "x_" + std::to_string(c) + "_" + std::to_string(k); }

// Wraps long expressions; LP readers cap line length.
class Expr {
 public:
  explicit Expr(std::ostringstream& os) : os_(os) {}
  void term(double coef, const std::string& var) {
    if (width_ > 200) {
      os_ << "\n   ";
      width_ = 0;
    }
    std::ostringstream t;
    t << std::setprecision(17);
    if (first_) t << (coef < 0 ? "-" : "");
    else t << (coef < 0 ? " - " : " + ");
    const double a = coef < 0 ? -coef : coef;
    if (a != 1.0) t << a << ' ';
    t << var;
    os_ << t.str();
    width_ += t.str().size();
    first_ = false;
  }

 private:
  std::ostringstream& os_;
  std::size_t width_ = 0;
  bool first_ = true;
};

}  // namespace

std::string export_milp(const FleetInstance& inst) {
  inst.validate();
  const int nc = milp_vehicle_count(inst);
  const int nv = static_cast<int>(inst.class_count());
  const int nk = static_cast<int>(inst.tour_count());

  std::ostringstream os;
  os << std::setprecision(17);
  os << "\\ fleet assignment: " << nc << " vehicles, " << nv << " classes, " << nk << " tours\n";
  os << "Minimize\n obj: ";
  {
    Expr e(os);
    for (int c = 0; c < nc; ++c) {
      for (int v = 0; v < nv; ++v) e.term(inst.classes[v].cost, z(c, v));
      for (int k = 0; k < nk; ++k) e.term(inst.tours[k].cost, x(c, k));
    }
    if (nc == 0) os << "0";
  }
  os << "\nSubject To\n";
  for (int c = 0; c < nc; ++c) {
    os << " unique_" << c << ": ";
    Expr e(os);
    for (int v = 0; v < nv; ++v) e.term(1.0, z(c, v));
    os << " <= 1\n";
  }
  for (int c = 0; c < nc; ++c)
    for (int k = 0; k < nk; ++k) {
      os << " assigned_" << c << "_" << k << ": ";
      Expr e(os);
      e.term(1.0, x(c, k));
      for (int v = 0; v < nv; ++v) e.term(-1.0, z(c, v));
      os << " <= 0\n";
    }
  for (int c = 0; c < nc; ++c)
    for (int k = 0; k < nk; ++k)
      for (int v = 0; v < nv; ++v)
        if (!inst.tours[k].allows(v))
          os << " compat_" << c << "_" << k << "_" << v << ": " << z(c, v) << " + " << x(c, k) << " <= 1\n";
  for (int c = 0; c < nc; ++c)
    for (const auto& [i, j] : inst.conflicts.edges())
      os << " conflict_" << c << "_" << i << "_" << j << ": " << x(c, i) << " + " << x(c, j) << " <= 1\n";
  for (int k = 0; k < nk; ++k) {
    os << " cover_" << k << ": ";
    Expr e(os);
    for (int c = 0; c < nc; ++c) e.term(1.0, x(c, k));
    os << " >= 1\n";
  }
  for (int v = 0; v < nv; ++v) {
    os << " nmin_" << v << ": ";
    Expr e(os);
    for (int c = 0; c < nc; ++c) e.term(1.0, z(c, v));
    os << " >= " << inst.classes[v].n_min << "\n";
    os << " nmax_" << v << ": ";
    Expr f(os);
    for (int c = 0; c < nc; ++c) f.term(1.0, z(c, v));
    os << " <= " << inst.classes[v].n_max << "\n";
  }
  os << "Binary\n";
  for (int c = 0; c < nc; ++c) {
    for (int v = 0; v < nv; ++v) os << " " << z(c, v) << "\n";
    for (int k = 0; k < nk; ++k) os << " " << x(c, k) << "\n";
  }
  os << "End\n";
  return os.str();
}

void write_milp(const FleetInstance& inst, const std::filesystem::path& path) {
  const std::string text = export_milp(inst);
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  f << text;
  if (!f) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace hcg
