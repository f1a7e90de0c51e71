#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "muskat/cli.hpp"

namespace muskat::cli {

namespace {

struct Table {
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;

  const std::vector<double>* column(const std::string& n) const {
    const auto it = std::find(names.begin(), names.end(), n);
    return it == names.end() ? nullptr : &columns[static_cast<std::size_t>(it - names.begin())];
  }
};

Table read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  Table t;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    if (t.names.empty()) {
      t.names = fields;
      t.columns.resize(fields.size());
      continue;
    }
    if (fields.size() != t.names.size()) throw std::runtime_error(path.string() + ": ragged row");
    for (std::size_t i = 0; i < fields.size(); ++i) t.columns[i].push_back(std::stod(fields[i]));
  }
  if (t.names.empty()) throw std::runtime_error(path.string() + ": no header row");
  return t;
}

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

void write_svg(const std::filesystem::path& path, const std::string& title, const std::string& xlabel,
               const std::vector<Series>& series) {
  constexpr double W = 640, H = 400, left = 80, right = 20, top = 40, bottom = 50;
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, s.y[i]);
      y1 = std::max(y1, s.y[i]);
    }
  if (!(x1 > x0)) x1 = x0 + 1.0;
  if (!(y1 > y0)) {
    const double pad = y0 == 0.0 ? 1.0 : 0.05 * std::abs(y0);
    y0 -= pad;
    y1 += pad;
  }
  const auto px = [&](double x) { return left + (x - x0) / (x1 - x0) * (W - left - right); };
  const auto py = [&](double y) { return H - bottom - (y - y0) / (y1 - y0) * (H - top - bottom); };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

  std::ofstream out(path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << title << "</text>\n";
  out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << W - left - right << "\" height=\"" << H - top - bottom
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double xv = x0 + (x1 - x0) * i / 4.0, yv = y0 + (y1 - y0) * i / 4.0;
    out << "<text x=\"" << px(xv) << "\" y=\"" << H - bottom + 16 << "\" text-anchor=\"middle\">" << num(xv) << "</text>\n";
    out << "<text x=\"" << left - 6 << "\" y=\"" << py(yv) + 4 << "\" text-anchor=\"end\">" << num(yv) << "</text>\n";
  }
  out << "<text x=\"" << W / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">" << xlabel << "</text>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* c = colors[k % 6];
    out << "<polyline fill=\"none\" stroke=\"" << c << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) out << (i ? " " : "") << px(s.x[i]) << "," << py(s.y[i]);
    out << "\"/>\n";
    out << "<text x=\"" << left + 10 << "\" y=\"" << top + 16 + 15 * k << "\" fill=\"" << c << "\">" << s.label
        << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace

int cmd_plot(const std::filesystem::path& run_dir, std::ostream& out, std::ostream& err) {
  Table diag;
  try {
    diag = read_csv(run_dir / "diagnostics.csv");
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  const auto* t = diag.column("t");
  if (!t) {
    err << "error: diagnostics.csv has no t column\n";
    return 1;
  }
  const auto plots = run_dir / "plots";
  std::filesystem::create_directories(plots);
  const std::vector<std::pair<std::string, std::vector<std::string>>> groups = {
      {"extrema", {"sup_f", "inf_f"}},
      {"slope", {"sup_slope"}},
      {"energy", {"l2_sq", "balance_lhs"}},
      {"dissipation", {"dissipation"}},
      {"wiener", {"wiener1", "wiener2d"}},
      {"balance_residual", {"balance_relative_residual"}},
  };
  std::size_t written = 0;
  for (const auto& [name, cols] : groups) {
    std::vector<Series> s;
    for (const auto& c : cols)
      if (const auto* y = diag.column(c)) s.push_back({c, *t, *y});
    if (s.empty()) continue;
    write_svg(plots / (name + ".svg"), name, "t", s);
    ++written;
  }

  const auto snaps = run_dir / "snapshots";
  if (std::filesystem::is_directory(snaps)) {
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(snaps))
      if (e.path().extension() == ".csv") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    if (files.size() > 6) {
      std::vector<std::filesystem::path> pick;
      for (std::size_t i = 0; i < 6; ++i) pick.push_back(files[i * (files.size() - 1) / 5]);
      files = pick;
    }
    std::vector<Series> s;
    for (const auto& f : files) {
      try {
        const Table tab = read_csv(f);
        if (const auto* x = tab.column("x"))
          if (const auto* y = tab.column("f")) s.push_back({f.stem().string(), *x, *y});
      } catch (const std::exception& e) {
        err << "warning: skipping " << f.string() << ": " << e.what() << "\n";
      }
    }
    if (!s.empty()) {
      write_svg(plots / "profiles.svg", "profiles", "x", s);
      ++written;
    }
  }
  out << "wrote " << written << " plots to " << plots.string() << "\n";
  return 0;
}

}  // namespace muskat::cli
