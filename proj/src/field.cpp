#include "pmelab/field.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "pmelab/errors.hpp"
#include "pmelab/kahan.hpp"

namespace pmelab {

Point Grid::cell_center(int flat) const {
  if (d == 1) return {center(0, flat), 0.0};
  return {center(0, flat % n), center(1, flat / n)};
}

void Grid::validate() const {
  if (d != 1 && d != 2) throw std::domain_error("grid: d must be 1 or 2");
  if (n < 2) throw std::domain_error("grid: n must be at least 2");
  if (!(std::isfinite(h) && h > 0.0)) throw std::domain_error("grid: h must be positive");
  for (int k = 0; k < d; ++k)
    if (!std::isfinite(xlo[k])) throw std::domain_error("grid: xlo must be finite");
  if (!(std::isfinite(t0) && std::isfinite(T) && T > t0))
    throw std::domain_error("grid: time interval must satisfy T > t0");
  if (!(dt >= 0.0) || !std::isfinite(dt)) throw std::domain_error("grid: dt must be >= 0");
  if (slices < 2) throw std::domain_error("grid: at least two stored slices required");
}

Field::Field(Grid grid, std::vector<double> times)
    : grid_(grid), times_(std::move(times)) {
  grid_.validate();
  if (times_.empty()) throw std::domain_error("field: empty time vector");
  for (size_t j = 1; j < times_.size(); ++j)
    if (!(times_[j] > times_[j - 1]))
      throw std::domain_error("field: times must be strictly increasing");
  values_.assign(times_.size() * static_cast<size_t>(grid_.cells()), 0.0);
}

std::span<double> Field::slice(int j) {
  return {values_.data() + static_cast<size_t>(j) * cells(), static_cast<size_t>(cells())};
}

std::span<const double> Field::slice(int j) const {
  return {values_.data() + static_cast<size_t>(j) * cells(), static_cast<size_t>(cells())};
}

namespace {

/* Map a coordinate to the lower cell-center index and interpolation weight,
 * constant beyond the outermost centers. */
struct AxisWeight {
  int i0;
  double w;
};

AxisWeight axis_weight(double x, double xlo, double h, int n) {
  const double s = (x - xlo) / h - 0.5;
  if (s <= 0.0) return {0, 0.0};
  if (s >= n - 1.0) return {n - 2, 1.0};
  const int i0 = static_cast<int>(s);
  return {i0, s - i0};
}

}  // namespace

double Field::interpolate(const Point& x, double t) const {
  for (int k = 0; k < grid_.d; ++k) {
    if (x[k] < grid_.xlo[k] - grid_.h || x[k] > grid_.xhi(k) + grid_.h) {
      std::ostringstream os;
      os << "interpolate: x[" << k << "] = " << x[k] << " outside the box ["
         << grid_.xlo[k] << ", " << grid_.xhi(k) << "]";
      throw std::domain_error(os.str());
    }
  }
  const double tol = 1e-9 * (std::abs(times_.back()) + std::abs(times_.front()) + 1.0);
  if (t < times_.front() - tol || t > times_.back() + tol) {
    std::ostringstream os;
    os << "interpolate: t = " << t << " outside sampled range ["
       << times_.front() << ", " << times_.back() << "]";
    throw std::domain_error(os.str());
  }
  const double tc = std::clamp(t, times_.front(), times_.back());

  auto it = std::upper_bound(times_.begin(), times_.end(), tc);
  int j1 = static_cast<int>(it - times_.begin());
  j1 = std::clamp(j1, 1, slice_count() - 1);
  const int j0 = j1 - 1;
  double wt = 0.0;
  if (slice_count() > 1)
    wt = (tc - times_[j0]) / (times_[j1] - times_[j0]);
  wt = std::clamp(wt, 0.0, 1.0);

  auto spatial = [&](int j) {
    const auto u = slice(j);
    const auto ax = axis_weight(x[0], grid_.xlo[0], grid_.h, grid_.n);
    if (grid_.d == 1)
      return (1.0 - ax.w) * u[ax.i0] + ax.w * u[ax.i0 + 1];
    const auto ay = axis_weight(x[1], grid_.xlo[1], grid_.h, grid_.n);
    const int n = grid_.n;
    const double v00 = u[ax.i0 + n * ay.i0];
    const double v10 = u[ax.i0 + 1 + n * ay.i0];
    const double v01 = u[ax.i0 + n * (ay.i0 + 1)];
    const double v11 = u[ax.i0 + 1 + n * (ay.i0 + 1)];
    return (1.0 - ay.w) * ((1.0 - ax.w) * v00 + ax.w * v10) +
           ay.w * ((1.0 - ax.w) * v01 + ax.w * v11);
  };

  if (wt == 0.0) return spatial(j0);
  if (wt == 1.0) return spatial(j1);
  return (1.0 - wt) * spatial(j0) + wt * spatial(j1);
}

double Field::max_abs() const {
  double r = 0.0;
  for (double v : values_) r = std::max(r, std::abs(v));
  return r;
}

double Field::min_value() const {
  double r = values_.empty() ? 0.0 : values_.front();
  for (double v : values_) r = std::min(r, v);
  return r;
}

double Field::max_value() const {
  double r = values_.empty() ? 0.0 : values_.front();
  for (double v : values_) r = std::max(r, v);
  return r;
}

double Field::slice_mass(int j) const {
  KahanSum s;
  for (double v : slice(j)) s.add(v);
  const double hd = grid_.d == 1 ? grid_.h : grid_.h * grid_.h;
  return s.value() * hd;
}

bool Field::all_finite() const {
  for (double v : values_)
    if (!std::isfinite(v)) return false;
  return true;
}

std::vector<double> linspace(double a, double b, int count) {
  if (count < 2) throw std::domain_error("linspace: count must be >= 2");
  std::vector<double> r(count);
  for (int i = 0; i < count; ++i)
    r[i] = a + (b - a) * (static_cast<double>(i) / (count - 1));
  r.front() = a;
  r.back() = b;
  return r;
}

// ---- snapshot io -----------------------------------------------------------

namespace {
constexpr const char* kMagic = "PMESNAP1";
}

void write_snapshot(const Snapshot& snap, const std::string& path) {
  const Grid& g = snap.field.grid();
  nlohmann::json header;
  header["format"] = kMagic;
  header["endian"] = "little";
  header["m"] = snap.m;
  header["grid"] = {
      {"d", g.d},  {"n", g.n},   {"h", g.h},       {"xlo", std::vector<double>(g.xlo.begin(), g.xlo.begin() + g.d)},
      {"t0", g.t0}, {"T", g.T},  {"dt", g.dt},     {"slices", g.slices},
  };
  header["times"] = snap.field.times();

  std::ofstream os(path, std::ios::binary);
  if (!os) throw io_error("cannot open for writing: " + path);
  os << kMagic << '\n' << header.dump() << '\n';
  for (int j = 0; j < snap.field.slice_count(); ++j) {
    const auto s = snap.field.slice(j);
    os.write(reinterpret_cast<const char*>(s.data()),
             static_cast<std::streamsize>(s.size() * sizeof(double)));
  }
  if (!os) throw io_error("write failed: " + path);
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw io_error("cannot open for reading: " + path);
  std::string magic, header_line;
  if (!std::getline(is, magic) || magic != kMagic)
    throw io_error("not a snapshot file (bad magic): " + path);
  if (!std::getline(is, header_line))
    throw io_error("truncated snapshot header: " + path);

  nlohmann::json header;
  try {
    header = nlohmann::json::parse(header_line);
  } catch (const nlohmann::json::exception& e) {
    throw io_error("malformed snapshot header in " + path + ": " + e.what());
  }
  if (header.value("endian", "little") != "little")
    throw io_error("unsupported byte order in " + path);

  Grid g;
  try {
    const auto& jg = header.at("grid");
    g.d = jg.at("d").get<int>();
    g.n = jg.at("n").get<int>();
    g.h = jg.at("h").get<double>();
    const auto xlo = jg.at("xlo").get<std::vector<double>>();
    for (size_t k = 0; k < xlo.size() && k < 2; ++k) g.xlo[k] = xlo[k];
    g.t0 = jg.at("t0").get<double>();
    g.T = jg.at("T").get<double>();
    g.dt = jg.at("dt").get<double>();
    g.slices = jg.at("slices").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw io_error("incomplete snapshot header in " + path + ": " + e.what());
  }

  Snapshot snap{Field(g, header.at("times").get<std::vector<double>>()),
                header.value("m", 2.0)};
  for (int j = 0; j < snap.field.slice_count(); ++j) {
    auto s = snap.field.slice(j);
    is.read(reinterpret_cast<char*>(s.data()),
            static_cast<std::streamsize>(s.size() * sizeof(double)));
    if (!is) throw io_error("truncated snapshot payload: " + path);
  }
  return snap;
}

}  // namespace pmelab
