#include "csas/io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>
#include <system_error>
#include <vector>

#include "csas/error.hpp"

namespace csas::io {

namespace fs = std::filesystem;

static_assert(std::numeric_limits<float>::is_iec559, "binary format assumes IEEE-754 float32");

namespace {

template <typename T>
void put_le(std::string& out, T value) {
  using U = std::make_unsigned_t<T>;
  auto bits = static_cast<U>(value);
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    out.push_back(static_cast<char>(bits & 0xFFu));
    bits = static_cast<U>(bits >> 8);
  }
}

template <typename T>
T get_le(const unsigned char* p) {
  T value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) value = static_cast<T>(value | (static_cast<T>(p[i]) << (8 * i)));
  return value;
}

bool is_binary_path(const fs::path& path) { return path.extension() == ".csas"; }

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, sep)) cells.push_back(cell);
  if (!line.empty() && line.back() == sep) cells.emplace_back();
  return cells;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_number(const std::string& raw, const fs::path& path, int line_no) {
  const std::string cell = trim(raw);
  if (cell == "inf") return kInfinity;
  try {
    std::size_t used = 0;
    const double v = std::stod(cell, &used);
    if (used == cell.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::MalformedText, path.string() + ":" + std::to_string(line_no) + ": bad number '" + cell + "'");
}

// Non-comment, non-blank lines with their 1-based line numbers; collects "# key=value" directives.
struct TextLines {
  std::vector<std::pair<int, std::string>> rows;
  std::vector<std::string> directives;
};

TextLines read_lines(const fs::path& path) {
  std::istringstream in(read_file(path));
  TextLines out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '#') {
      out.directives.push_back(trim(t.substr(1)));
      continue;
    }
    out.rows.emplace_back(line_no, t);
  }
  return out;
}

Collection read_binary(const fs::path& path) {
  const std::string bytes = read_file(path);
  const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
  if (bytes.size() < 4 || std::memcmp(p, "CSAS", 4) != 0) throw Error(ErrorCode::BadMagic, path.string());
  if (bytes.size() < kHeaderBytes) throw Error(ErrorCode::TruncatedPayload, path.string() + ": short header");

  CsasBinHeader h;
  h.version = get_le<std::uint16_t>(p + 4);
  h.n_angles = get_le<std::uint32_t>(p + 6);
  h.n_range = get_le<std::uint32_t>(p + 10);
  h.step_millideg = get_le<std::uint32_t>(p + 14);
  if (h.version != 1)
    throw Error(ErrorCode::VersionUnsupported, path.string() + ": version " + std::to_string(h.version));
  if (h.n_angles == 0 || h.n_range == 0 ||
      static_cast<std::uint64_t>(h.n_angles) * h.step_millideg != 360000u) {
    std::ostringstream os;
    os << path.string() << ": " << h.n_angles << " angles at " << h.step_millideg << " millideg";
    throw Error(ErrorCode::InconsistentHeader, os.str());
  }
  const std::uint64_t payload = static_cast<std::uint64_t>(h.n_angles) * h.n_range * 8u;
  if (bytes.size() - kHeaderBytes < payload) {
    std::ostringstream os;
    os << path.string() << ": expected " << payload << " payload bytes, found " << bytes.size() - kHeaderBytes;
    throw Error(ErrorCode::TruncatedPayload, os.str());
  }
  if (bytes.size() - kHeaderBytes > payload)
    throw Error(ErrorCode::InconsistentHeader, path.string() + ": trailing bytes after payload");

  Eigen::MatrixXcd profiles(h.n_angles, h.n_range);
  const unsigned char* q = p + kHeaderBytes;
  for (std::uint32_t i = 0; i < h.n_angles; ++i) {
    for (std::uint32_t b = 0; b < h.n_range; ++b, q += 8) {
      const float re = std::bit_cast<float>(get_le<std::uint32_t>(q));
      const float im = std::bit_cast<float>(get_le<std::uint32_t>(q + 4));
      profiles(i, b) = Complex(re, im);
    }
  }
  return Collection(h.step_millideg / 1000.0, std::move(profiles));
}

Collection read_text(const fs::path& path) {
  const TextLines text = read_lines(path);
  const bool real_only =
      std::find(text.directives.begin(), text.directives.end(), "format=real") != text.directives.end();
  if (text.rows.empty()) throw Error(ErrorCode::MalformedText, path.string() + ": no data rows");

  const std::size_t width = split(text.rows.front().second, ',').size();
  if (!real_only && width % 2 != 0)
    throw Error(ErrorCode::MalformedText, path.string() + ": complex rows need an even number of columns");
  const std::size_t n_range = real_only ? width : width / 2;
  if (n_range == 0) throw Error(ErrorCode::MalformedText, path.string() + ": empty rows");

  Eigen::MatrixXcd profiles(static_cast<Eigen::Index>(text.rows.size()), static_cast<Eigen::Index>(n_range));
  for (std::size_t i = 0; i < text.rows.size(); ++i) {
    const auto& [line_no, line] = text.rows[i];
    const auto cells = split(line, ',');
    if (cells.size() != width)
      throw Error(ErrorCode::MalformedText, path.string() + ":" + std::to_string(line_no) + ": expected " +
                                                std::to_string(width) + " columns");
    for (std::size_t b = 0; b < n_range; ++b) {
      const double re = parse_number(cells[real_only ? b : 2 * b], path, line_no);
      const double im = real_only ? 0.0 : parse_number(cells[2 * b + 1], path, line_no);
      profiles(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(b)) = Complex(re, im);
    }
  }
  if (360000 % profiles.rows() != 0)
    throw Error(ErrorCode::InconsistentHeader,
                path.string() + ": " + std::to_string(profiles.rows()) + " rows do not tile 360 deg in whole millidegrees");
  return Collection(std::move(profiles));
}

}  // namespace

std::string format_number(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  return buf;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string() + " for reading");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file_atomic(const fs::path& path, const std::string& bytes) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot open " + path.string() + " for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.close();
    if (!out) {
      std::error_code ignored;
      fs::remove(tmp, ignored);
      throw Error(ErrorCode::Io, "write failed for " + path.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    fs::remove(tmp, ignored);
    throw Error(ErrorCode::Io, "cannot move output into place at " + path.string() + ": " + ec.message());
  }
}

Collection read_collection(const fs::path& path) {
  return is_binary_path(path) ? read_binary(path) : read_text(path);
}

void write_collection(const Collection& collection, const fs::path& path) {
  const auto n_angles = static_cast<std::uint32_t>(collection.n_angles());
  const auto n_range = static_cast<std::uint32_t>(collection.n_range());
  std::string out;

  if (!is_binary_path(path)) {
    std::ostringstream os;
    for (Eigen::Index i = 0; i < collection.n_angles(); ++i) {
      for (Eigen::Index b = 0; b < collection.n_range(); ++b) {
        if (b > 0) os << ',';
        os << format_number(collection.profiles()(i, b).real()) << ',' << format_number(collection.profiles()(i, b).imag());
      }
      os << '\n';
    }
    write_file_atomic(path, os.str());
    return;
  }

  if (360000 % n_angles != 0)
    throw Error(ErrorCode::InconsistentHeader, "step is not a whole number of millidegrees");
  out.reserve(kHeaderBytes + static_cast<std::size_t>(n_angles) * n_range * 8u);
  out.append("CSAS", 4);
  put_le<std::uint16_t>(out, 1);
  put_le<std::uint32_t>(out, n_angles);
  put_le<std::uint32_t>(out, n_range);
  put_le<std::uint32_t>(out, 360000u / n_angles);
  for (Eigen::Index i = 0; i < collection.n_angles(); ++i) {
    for (Eigen::Index b = 0; b < collection.n_range(); ++b) {
      const Complex z = collection.profiles()(i, b);
      put_le<std::uint32_t>(out, std::bit_cast<std::uint32_t>(static_cast<float>(z.real())));
      put_le<std::uint32_t>(out, std::bit_cast<std::uint32_t>(static_cast<float>(z.imag())));
    }
  }
  write_file_atomic(path, out);
}

void write_cloud(const PointCloud& cloud, const fs::path& path) {
  std::ostringstream os;
  os << "angle_deg";
  for (Eigen::Index c = 0; c < cloud.dim(); ++c) os << ",c" << c + 1;
  os << '\n';
  for (Eigen::Index i = 0; i < cloud.size(); ++i) {
    if (cloud.labels) os << format_number((*cloud.labels)[static_cast<std::size_t>(i)].degrees());
    for (Eigen::Index c = 0; c < cloud.dim(); ++c) os << ',' << format_number(cloud.points(i, c));
    os << '\n';
  }
  write_file_atomic(path, os.str());
}

PointCloud read_cloud(const fs::path& path) {
  TextLines text = read_lines(path);
  if (!text.rows.empty() && text.rows.front().second.rfind("angle_deg", 0) == 0) text.rows.erase(text.rows.begin());
  if (text.rows.empty()) throw Error(ErrorCode::MalformedText, path.string() + ": no points");

  const std::size_t width = split(text.rows.front().second, ',').size();
  if (width < 2) throw Error(ErrorCode::MalformedText, path.string() + ": rows need an angle and a coordinate");
  PointCloud cloud;
  cloud.points.resize(static_cast<Eigen::Index>(text.rows.size()), static_cast<Eigen::Index>(width - 1));
  std::vector<LookAngle> labels;
  bool labelled = true;
  for (std::size_t i = 0; i < text.rows.size(); ++i) {
    const auto& [line_no, line] = text.rows[i];
    const auto cells = split(line, ',');
    if (cells.size() != width)
      throw Error(ErrorCode::MalformedText, path.string() + ":" + std::to_string(line_no) + ": ragged row");
    if (trim(cells[0]).empty())
      labelled = false;
    else
      labels.emplace_back(parse_number(cells[0], path, line_no));
    for (std::size_t c = 1; c < width; ++c)
      cloud.points(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c - 1)) = parse_number(cells[c], path, line_no);
  }
  if (labelled) cloud.labels = std::move(labels);
  return cloud;
}

void write_diagram(const PersistenceDiagram& diagram, const fs::path& path) {
  std::ostringstream os;
  os << "dim,birth,death,censored\n";
  for (const auto& p : diagram.pairs)
    os << p.dim << ',' << format_number(p.birth) << ',' << format_number(p.death) << ',' << (p.censored ? 1 : 0) << '\n';
  write_file_atomic(path, os.str());
}

PersistenceDiagram read_diagram(const fs::path& path) {
  TextLines text = read_lines(path);
  if (text.rows.empty() || text.rows.front().second != "dim,birth,death,censored")
    throw Error(ErrorCode::MalformedText, path.string() + ": missing 'dim,birth,death,censored' header");
  PersistenceDiagram diagram;
  for (std::size_t i = 1; i < text.rows.size(); ++i) {
    const auto& [line_no, line] = text.rows[i];
    const auto cells = split(line, ',');
    if (cells.size() != 4) throw Error(ErrorCode::MalformedText, path.string() + ":" + std::to_string(line_no) + ": expected 4 fields");
    PersistencePair p;
    const double dim = parse_number(cells[0], path, line_no);
    const double censored = parse_number(cells[3], path, line_no);
    if ((dim != 0.0 && dim != 1.0) || (censored != 0.0 && censored != 1.0))
      throw Error(ErrorCode::MalformedText, path.string() + ":" + std::to_string(line_no) + ": bad dim or censored flag");
    p.dim = static_cast<int>(dim);
    p.birth = parse_number(cells[1], path, line_no);
    p.death = parse_number(cells[2], path, line_no);
    p.censored = censored == 1.0;
    diagram.pairs.push_back(p);
  }
  return diagram;
}

// ---------------------------------------------------------------------------------------------
// SVG

namespace {

constexpr int kCanvas = 800;

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

void svg_open(std::ostringstream& os, const std::string& title) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kCanvas << "\" height=\"" << kCanvas
     << "\" viewBox=\"0 0 " << kCanvas << ' ' << kCanvas << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"" << kCanvas << "\" height=\"" << kCanvas << "\" fill=\"white\"/>\n";
  if (!title.empty())
    os << "<text x=\"" << kCanvas / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << escape_xml(title)
       << "</text>\n";
}

// Axis-aligned plotting box mapping [lo, hi] data ranges onto pixel rectangles.
struct Panel {
  double left, top, size;
  double x_lo, x_hi, y_lo, y_hi;

  double px(double x) const { return left + (x - x_lo) / (x_hi - x_lo) * size; }
  double py(double y) const { return top + size - (y - y_lo) / (y_hi - y_lo) * size; }
};

void draw_axes(std::ostringstream& os, const Panel& p, const std::string& x_label, const std::string& y_label) {
  const double bottom = p.top + p.size;
  os << "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n";
  os << "<line x1=\"" << fixed(p.left) << "\" y1=\"" << fixed(bottom) << "\" x2=\"" << fixed(p.left + p.size)
     << "\" y2=\"" << fixed(bottom) << "\"/>\n";
  os << "<line x1=\"" << fixed(p.left) << "\" y1=\"" << fixed(bottom) << "\" x2=\"" << fixed(p.left) << "\" y2=\""
     << fixed(p.top) << "\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double fx = p.x_lo + (p.x_hi - p.x_lo) * t / 4.0;
    const double fy = p.y_lo + (p.y_hi - p.y_lo) * t / 4.0;
    os << "<line x1=\"" << fixed(p.px(fx)) << "\" y1=\"" << fixed(bottom) << "\" x2=\"" << fixed(p.px(fx))
       << "\" y2=\"" << fixed(bottom + 5) << "\"/>\n";
    os << "<line x1=\"" << fixed(p.left - 5) << "\" y1=\"" << fixed(p.py(fy)) << "\" x2=\"" << fixed(p.left)
       << "\" y2=\"" << fixed(p.py(fy)) << "\"/>\n";
  }
  os << "</g>\n<g fill=\"black\">\n";
  for (int t = 0; t <= 4; ++t) {
    const double fx = p.x_lo + (p.x_hi - p.x_lo) * t / 4.0;
    const double fy = p.y_lo + (p.y_hi - p.y_lo) * t / 4.0;
    os << "<text x=\"" << fixed(p.px(fx)) << "\" y=\"" << fixed(bottom + 18) << "\" text-anchor=\"middle\">"
       << format_number(fx) << "</text>\n";
    os << "<text x=\"" << fixed(p.left - 8) << "\" y=\"" << fixed(p.py(fy) + 4) << "\" text-anchor=\"end\">"
       << format_number(fy) << "</text>\n";
  }
  os << "<text x=\"" << fixed(p.left + p.size / 2) << "\" y=\"" << fixed(bottom + 36) << "\" text-anchor=\"middle\">"
     << escape_xml(x_label) << "</text>\n";
  os << "<text x=\"" << fixed(p.left - 48) << "\" y=\"" << fixed(p.top + p.size / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 "
     << fixed(p.left - 48) << ' ' << fixed(p.top + p.size / 2) << ")\">" << escape_xml(y_label) << "</text>\n";
  os << "</g>\n";
}

}  // namespace

std::string diagram_svg(const PersistenceDiagram& diagram, const std::string& title) {
  double vmax = 0.0;
  for (const auto& p : diagram.pairs) {
    vmax = std::max(vmax, p.birth);
    if (p.is_finite()) vmax = std::max(vmax, p.death);
  }
  if (!(vmax > 0.0)) vmax = 1.0;
  vmax *= 1.05;

  // Finite values occupy [0, vmax]; the band above the box holds infinite deaths.
  const Panel panel{100.0, 100.0, 620.0, 0.0, vmax, 0.0, vmax};
  const double inf_y = 70.0;

  std::ostringstream os;
  svg_open(os, title);
  draw_axes(os, panel, "birth", "death");
  os << "<line id=\"diagonal\" x1=\"" << fixed(panel.px(0)) << "\" y1=\"" << fixed(panel.py(0)) << "\" x2=\""
     << fixed(panel.px(vmax)) << "\" y2=\"" << fixed(panel.py(vmax)) << "\" stroke=\"gray\" stroke-width=\"1\"/>\n";
  os << "<line id=\"infinity\" x1=\"" << fixed(panel.px(0)) << "\" y1=\"" << fixed(inf_y) << "\" x2=\""
     << fixed(panel.px(vmax)) << "\" y2=\"" << fixed(inf_y) << "\" stroke=\"gray\" stroke-dasharray=\"4 4\"/>\n";
  os << "<text x=\"" << fixed(panel.left - 8) << "\" y=\"" << fixed(inf_y + 4) << "\" text-anchor=\"end\">inf</text>\n";

  // H0 first so H1 markers draw on top.
  for (int dim : {0, 1}) {
    const char* color = dim == 0 ? "black" : "red";
    os << "<g class=\"H" << dim << "\" fill=\"" << color << "\">\n";
    for (const auto& p : diagram.canonical().pairs) {
      if (p.dim != dim) continue;
      const double x = panel.px(p.birth);
      if (p.is_finite()) {
        os << "<circle cx=\"" << fixed(x) << "\" cy=\"" << fixed(panel.py(p.death)) << "\" r=\"4\"/>\n";
      } else {
        os << "<path class=\"infinite\" d=\"M " << fixed(x) << ' ' << fixed(inf_y - 7) << " L " << fixed(x + 6) << ' '
           << fixed(inf_y + 5) << " L " << fixed(x - 6) << ' ' << fixed(inf_y + 5) << " Z\"/>\n";
      }
    }
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string projection_svg(const PointCloud& projected, const std::string& title) {
  const Eigen::Index k = std::min<Eigen::Index>(projected.dim(), 4);
  std::vector<std::pair<Eigen::Index, Eigen::Index>> axes;
  if (k == 1) axes.emplace_back(-1, 0);  // angle against the single coordinate
  for (Eigen::Index a = 0; a < k; ++a)
    for (Eigen::Index b = a + 1; b < k; ++b) axes.emplace_back(a, b);

  const int grid = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(std::max<std::size_t>(axes.size(), 1)))));
  const double cell = (kCanvas - 40.0) / grid;
  const double margin = 70.0;

  auto column = [&](Eigen::Index c) -> Eigen::VectorXd {
    if (c >= 0) return projected.points.col(c);
    Eigen::VectorXd angles(projected.size());
    for (Eigen::Index i = 0; i < projected.size(); ++i)
      angles[i] = projected.labels ? (*projected.labels)[static_cast<std::size_t>(i)].degrees() : static_cast<double>(i);
    return angles;
  };
  auto span = [](const Eigen::VectorXd& v) {
    double lo = v.size() ? v.minCoeff() : 0.0, hi = v.size() ? v.maxCoeff() : 1.0;
    if (!(hi > lo)) {
      lo -= 1.0;
      hi += 1.0;
    }
    const double pad = 0.05 * (hi - lo);
    return std::pair{lo - pad, hi + pad};
  };

  std::ostringstream os;
  svg_open(os, title);
  for (std::size_t n = 0; n < axes.size(); ++n) {
    const auto [a, b] = axes[n];
    const Eigen::VectorXd xs = column(a), ys = column(b);
    const auto [x_lo, x_hi] = span(xs);
    const auto [y_lo, y_hi] = span(ys);
    const Panel panel{20.0 + (n % grid) * cell + margin, 40.0 + (n / grid) * cell + 10.0, cell - margin - 10.0,
                      x_lo, x_hi, y_lo, y_hi};
    draw_axes(os, panel, a < 0 ? "angle (deg)" : "PC" + std::to_string(a + 1), "PC" + std::to_string(b + 1));
    os << "<g class=\"points\">\n";
    for (Eigen::Index i = 0; i < projected.size(); ++i) {
      const double hue = projected.labels ? (*projected.labels)[static_cast<std::size_t>(i)].degrees() : 0.0;
      os << "<circle cx=\"" << fixed(panel.px(xs[i])) << "\" cy=\"" << fixed(panel.py(ys[i]))
         << "\" r=\"2.5\" fill=\"hsl(" << fixed(hue) << ",80%,40%)\"/>\n";
    }
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

void write_diagram_svg(const PersistenceDiagram& diagram, const fs::path& path, const std::string& title) {
  write_file_atomic(path, diagram_svg(diagram, title));
}

void write_projection_svg(const PointCloud& projected, const fs::path& path, const std::string& title) {
  write_file_atomic(path, projection_svg(projected, title));
}

// ---------------------------------------------------------------------------------------------
// Feature reports

namespace {

const char* kind_name(ReflectionKind kind) { return kind == ReflectionKind::Flare ? "flare" : "loop"; }

}  // namespace

std::string report_text(const FeatureReport& report) {
  std::ostringstream os;
  os << "[noise_floor]\n"
     << "level = " << format_number(report.noise_floor.level) << '\n'
     << "method = median_quantile\n"
     << "quantile = " << format_number(report.noise_floor.quantile) << '\n'
     << "\n[parameters]\n"
     << "factor = " << format_number(report.params.factor) << '\n'
     << "half_window = " << report.params.half_window << '\n'
     << "symmetry_threshold = " << format_number(report.params.symmetry_threshold) << '\n'
     << "critical_tol = " << format_number(report.params.critical_tol) << '\n'
     << "\n[summary]\n"
     << "excursions = " << report.excursions.size() << '\n';
  std::size_t flares = 0;
  for (const auto& f : report.features) flares += f.kind == ReflectionKind::Flare;
  os << "flares = " << flares << '\n' << "loops = " << report.features.size() - flares << '\n';

  for (std::size_t i = 0; i < report.features.size(); ++i) {
    const auto& f = report.features[i];
    os << "\n[excursion " << i + 1 << "]\n"
       << "start_deg = " << format_number(f.excursion.start.degrees()) << '\n'
       << "end_deg = " << format_number(f.excursion.end.degrees()) << '\n'
       << "samples = " << f.excursion.length << '\n'
       << "peak_deg = " << format_number(f.excursion.peak_angle.degrees()) << '\n'
       << "peak_norm = " << format_number(f.excursion.peak_norm) << '\n'
       << "kind = " << kind_name(f.kind) << '\n'
       << "symmetry_score = " << format_number(f.symmetry_score) << '\n'
       << "half_window = " << f.half_window << '\n';
  }
  os << "\n[critical_angles]\n"
     << "non_isolated = " << (report.critical.non_isolated ? "true" : "false") << '\n'
     << "angles_deg =";
  for (std::size_t i = 0; i < report.critical.angles.size(); ++i)
    os << (i ? "," : " ") << format_number(report.critical.angles[i].degrees());
  os << '\n';
  return os.str();
}

std::string report_rows(const FeatureReport& report) {
  std::ostringstream os;
  os << "index,start_deg,end_deg,samples,peak_deg,peak_norm,kind,symmetry_score\n";
  for (std::size_t i = 0; i < report.features.size(); ++i) {
    const auto& f = report.features[i];
    os << i + 1 << ',' << format_number(f.excursion.start.degrees()) << ',' << format_number(f.excursion.end.degrees())
       << ',' << f.excursion.length << ',' << format_number(f.excursion.peak_angle.degrees()) << ','
       << format_number(f.excursion.peak_norm) << ',' << kind_name(f.kind) << ',' << format_number(f.symmetry_score)
       << '\n';
  }
  return os.str();
}

}  // namespace csas::io
