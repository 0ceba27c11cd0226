#include "vortexlab/cli/output.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "vortexlab/error.hpp"

namespace vortexlab::cli {

namespace fs = std::filesystem;

namespace {

std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string cell(const std::optional<double>& v) { return v ? number(*v) : std::string(); }

std::optional<double> parse_cell(const std::string& s, std::size_t line) {
  if (s.empty()) return std::nullopt;
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": bad number '" + s + "'");
}

[[noreturn]] void io_error(const fs::path& path, const std::string& what) {
  throw Error(ErrorKind::IoError, path.string() + ": " + what);
}

}  // namespace

std::vector<CsvRow> csv_rows(const std::vector<vortex::DiagnosticsReport>& reports) {
  std::vector<CsvRow> out;
  for (const auto& r : reports) {
    CsvRow base;
    base.epsilon = r.epsilon;
    base.sup_deviation = r.sup_deviation;
    base.bradlow_residual = r.identities.bradlow;
    base.identity_residual = r.identities.identity;
    base.sup_f = r.apriori.sup_f;
    base.sup_grad_f = r.apriori.sup_grad_f;
    for (std::size_t k = 0; k < r.points.size(); ++k) {
      CsvRow row = base;
      row.point_index = static_cast<int>(k);
      row.curvature_mass = r.points[k].curvature_mass;
      row.order_fit = r.points[k].order_fit;
      out.push_back(row);
    }
    CsvRow rest = base;
    rest.point_index = -1;
    rest.curvature_mass = r.complement_mass;
    out.push_back(rest);
  }
  return out;
}

std::string csv_text(const std::vector<CsvRow>& rows) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const auto& r : rows) {
    out += number(r.epsilon) + ',' + std::to_string(r.point_index) + ',' + cell(r.curvature_mass) +
           ',' + cell(r.sup_deviation) + ',' + cell(r.bradlow_residual) + ',' +
           cell(r.identity_residual) + ',' + cell(r.sup_f) + ',' + cell(r.sup_grad_f) + ',' +
           cell(r.order_fit) + '\n';
  }
  return out;
}

std::vector<CsvRow> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw Error(ErrorKind::ParseError, "line 1: expected header '" + std::string(kCsvHeader) + "'");
  }
  std::vector<CsvRow> rows;
  std::size_t n = 1;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::size_t start = 0;
    for (;;) {
      const std::size_t comma = line.find(',', start);
      cells.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (cells.size() != 9) {
      throw Error(ErrorKind::ParseError, "line " + std::to_string(n) + ": expected 9 columns");
    }
    CsvRow r;
    const auto eps = parse_cell(cells[0], n);
    const auto index = parse_cell(cells[1], n);
    if (!eps || !index) {
      throw Error(ErrorKind::ParseError, "line " + std::to_string(n) + ": missing epsilon or index");
    }
    r.epsilon = *eps;
    r.point_index = static_cast<int>(*index);
    r.curvature_mass = parse_cell(cells[2], n);
    r.sup_deviation = parse_cell(cells[3], n);
    r.bradlow_residual = parse_cell(cells[4], n);
    r.identity_residual = parse_cell(cells[5], n);
    r.sup_f = parse_cell(cells[6], n);
    r.sup_grad_f = parse_cell(cells[7], n);
    r.order_fit = parse_cell(cells[8], n);
    rows.push_back(r);
  }
  return rows;
}

Heatmap make_heatmap(const torus::ScalarField& field) {
  Heatmap h;
  h.width = field.grid().nx();
  h.height = field.grid().ny();
  h.min = field.min();
  h.max = field.max();
  const double span = h.max - h.min;
  h.pixels.resize(h.width * h.height);
  for (std::size_t row = 0; row < h.height; ++row) {
    const std::size_t j = h.height - 1 - row;
    for (std::size_t i = 0; i < h.width; ++i) {
      double t = span > 0.0 ? (field(i, j) - h.min) / span : 0.0;
      t = std::clamp(t, 0.0, 1.0);
      h.pixels[row * h.width + i] = static_cast<std::uint16_t>(std::lround(t * 65535.0));
    }
  }
  return h;
}

std::string pgm_bytes(const Heatmap& h) {
  std::string out = "P5\n" + std::to_string(h.width) + " " + std::to_string(h.height) + "\n65535\n";
  out.reserve(out.size() + 2 * h.pixels.size());
  for (std::uint16_t p : h.pixels) {
    out += static_cast<char>(p >> 8);
    out += static_cast<char>(p & 0xff);
  }
  return out;
}

Heatmap parse_pgm(const std::string& bytes) {
  std::istringstream in(bytes);
  std::string magic;
  std::size_t maxval = 0;
  Heatmap h;
  in >> magic >> h.width >> h.height >> maxval;
  if (!in || magic != "P5" || maxval != 65535) {
    throw Error(ErrorKind::ParseError, "not a 16-bit binary PGM");
  }
  in.get();
  const std::size_t offset = static_cast<std::size_t>(in.tellg());
  if (bytes.size() != offset + 2 * h.width * h.height) {
    throw Error(ErrorKind::ParseError, "PGM payload has the wrong length");
  }
  h.pixels.resize(h.width * h.height);
  for (std::size_t k = 0; k < h.pixels.size(); ++k) {
    const auto hi = static_cast<unsigned char>(bytes[offset + 2 * k]);
    const auto lo = static_cast<unsigned char>(bytes[offset + 2 * k + 1]);
    h.pixels[k] = static_cast<std::uint16_t>((hi << 8) | lo);
  }
  return h;
}

void emit_heatmap(const torus::ScalarField& field, const fs::path& path, const std::string& label) {
  const Heatmap h = make_heatmap(field);
  write_file_atomic(path, pgm_bytes(h));
  nlohmann::ordered_json side = {
      {"label", label},
      {"image", path.filename().string()},
      {"width", h.width},
      {"height", h.height},
      {"maxval", 65535},
      {"min", h.min},
      {"max", h.max},
      {"lx", field.geometry().length_x()},
      {"ly", field.geometry().length_y()},
      {"orientation", "pixel (c, r) is the sample at x = c*lx/nx, y = (ny-1-r)*ly/ny"}};
  fs::path sidecar = path;
  sidecar += ".json";
  write_file_atomic(sidecar, side.dump(2) + "\n");
}

void emit_csv(const std::vector<CsvRow>& rows, const fs::path& path) {
  write_file_atomic(path, csv_text(rows));
}

namespace {

struct Panel {
  double x0, y0, w, h;
  double xmin, xmax, ymin, ymax;
  double px(double x) const { return x0 + (x - xmin) / (xmax - xmin) * w; }
  double py(double y) const { return y0 + h - (y - ymin) / (ymax - ymin) * h; }
};

void pad(double& lo, double& hi) {
  if (!(hi > lo)) {
    lo -= 0.5;
    hi += 0.5;
  } else {
    const double m = 0.05 * (hi - lo);
    lo -= m;
    hi += m;
  }
}

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

void axes(std::ostringstream& os, const Panel& p, const std::string& title,
          const std::string& ylabel) {
  os << "<rect x=\"" << p.x0 << "\" y=\"" << p.y0 << "\" width=\"" << p.w << "\" height=\"" << p.h
     << "\" fill=\"none\" stroke=\"#444\"/>\n";
  os << "<text x=\"" << p.x0 + p.w / 2 << "\" y=\"" << p.y0 - 10
     << "\" text-anchor=\"middle\" font-size=\"14\">" << title << "</text>\n";
  os << "<text x=\"" << p.x0 + p.w / 2 << "\" y=\"" << p.y0 + p.h + 36
     << "\" text-anchor=\"middle\" font-size=\"12\">log10 epsilon</text>\n";
  os << "<text x=\"" << p.x0 - 44 << "\" y=\"" << p.y0 + p.h / 2
     << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 " << p.x0 - 44 << ' '
     << p.y0 + p.h / 2 << ")\">" << ylabel << "</text>\n";
  for (int t = 0; t <= 4; ++t) {
    const double xv = p.xmin + (p.xmax - p.xmin) * t / 4.0;
    const double yv = p.ymin + (p.ymax - p.ymin) * t / 4.0;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", xv);
    os << "<text x=\"" << p.px(xv) << "\" y=\"" << p.y0 + p.h + 16
       << "\" text-anchor=\"middle\" font-size=\"10\">" << buf << "</text>\n";
    std::snprintf(buf, sizeof buf, "%.3g", yv);
    os << "<text x=\"" << p.x0 - 6 << "\" y=\"" << p.py(yv) + 3
       << "\" text-anchor=\"end\" font-size=\"10\">" << buf << "</text>\n";
  }
}

void polyline(std::ostringstream& os, const Panel& p, const std::vector<std::pair<double, double>>& pts,
              const char* color, const std::string& label, int slot) {
  if (pts.empty()) return;
  os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
  for (const auto& [x, y] : pts) os << p.px(x) << ',' << p.py(y) << ' ';
  os << "\"/>\n";
  for (const auto& [x, y] : pts) {
    os << "<circle cx=\"" << p.px(x) << "\" cy=\"" << p.py(y) << "\" r=\"2.5\" fill=\"" << color
       << "\"/>\n";
  }
  os << "<text x=\"" << p.x0 + 8 << "\" y=\"" << p.y0 + 14 + 13 * slot << "\" font-size=\"10\" fill=\""
     << color << "\">" << label << "</text>\n";
}

}  // namespace

std::string convergence_svg(const std::vector<CsvRow>& rows) {
  std::map<int, std::vector<std::pair<double, double>>> masses;
  std::map<double, double> deviation;
  for (const auto& r : rows) {
    if (!(r.epsilon > 0.0)) continue;
    const double lx = std::log10(r.epsilon);
    if (r.point_index >= 0 && r.curvature_mass) masses[r.point_index].push_back({lx, *r.curvature_mass});
    if (r.sup_deviation && *r.sup_deviation > 0.0) deviation[lx] = std::log10(*r.sup_deviation);
  }

  double xmin = INFINITY, xmax = -INFINITY, mmin = INFINITY, mmax = -INFINITY;
  double dmin = INFINITY, dmax = -INFINITY;
  for (const auto& [k, pts] : masses) {
    for (const auto& [x, y] : pts) {
      xmin = std::min(xmin, x), xmax = std::max(xmax, x);
      mmin = std::min(mmin, y), mmax = std::max(mmax, y);
    }
  }
  for (const auto& [x, y] : deviation) {
    xmin = std::min(xmin, x), xmax = std::max(xmax, x);
    dmin = std::min(dmin, y), dmax = std::max(dmax, y);
  }
  if (!std::isfinite(xmin)) xmin = xmax = 0.0;
  if (!std::isfinite(mmin)) mmin = mmax = 0.0;
  if (!std::isfinite(dmin)) dmin = dmax = 0.0;
  pad(xmin, xmax);
  pad(mmin, mmax);
  pad(dmin, dmax);

  const Panel left{70, 40, 320, 260, xmin, xmax, mmin, mmax};
  const Panel right{490, 40, 320, 260, xmin, xmax, dmin, dmax};
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"860\" height=\"360\" "
        "font-family=\"sans-serif\">\n<rect width=\"860\" height=\"360\" fill=\"white\"/>\n";
  axes(os, left, "curvature mass per point", "mass");
  axes(os, right, "sup deviation on Omega", "log10 deviation");
  int slot = 0;
  for (const auto& [k, pts] : masses) {
    polyline(os, left, pts, kColors[slot % 6], "point " + std::to_string(k), slot);
    ++slot;
  }
  std::vector<std::pair<double, double>> dev(deviation.begin(), deviation.end());
  polyline(os, right, dev, kColors[0], "sup deviation", 0);
  os << "</svg>\n";
  return os.str();
}

void write_file_atomic(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) io_error(tmp, std::string("cannot open for writing: ") + std::strerror(errno));
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) io_error(tmp, "write failed");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    const std::string reason = ec.message();
    fs::remove(tmp, ec);
    io_error(path, "cannot rename into place: " + reason);
  }
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) io_error(path, std::string("cannot open for reading: ") + std::strerror(errno));
  std::ostringstream os;
  os << in.rdbuf();
  if (in.bad()) io_error(path, "read failed");
  return os.str();
}

}  // namespace vortexlab::cli
