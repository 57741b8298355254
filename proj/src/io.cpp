#include "pcr/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace pcr {
namespace io {

namespace {

// Reads the next header token, skipping whitespace and '#' comments.
std::string next_token(std::istream& in) {
  std::string tok;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {}
      continue;
    }
    if (std::isspace(c)) continue;
    break;
  }
  if (c == EOF) throw ParseError("unexpected end of file in netpbm header");
  tok.push_back(static_cast<char>(c));
  while ((c = in.get()) != EOF && !std::isspace(c) && c != '#')
    tok.push_back(static_cast<char>(c));
  if (c != EOF) in.unget();  // leave the delimiter for the caller
  return tok;
}

int parse_int(const std::string& tok, const char* what) {
  try {
    size_t pos;
    int v = std::stoi(tok, &pos);
    if (pos != tok.size()) throw ParseError(std::string("bad ") + what);
    return v;
  } catch (const ParseError&) {
    throw;
  } catch (...) {
    throw ParseError(std::string("bad ") + what + " '" + tok + "'");
  }
}

std::vector<uint8_t> read_netpbm(const std::string& path, const char* magic,
                                 int samples_per_pixel, int* width, int* height) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::string m = next_token(in);
  if (m != magic)
    throw ParseError("'" + path + "': expected " + magic + " header, got '" + m + "'");
  int w = parse_int(next_token(in), "width");
  int h = parse_int(next_token(in), "height");
  int maxval = parse_int(next_token(in), "maxval");
  if (w < 1 || h < 1) throw ParseError("'" + path + "': bad dimensions");
  if (maxval != 255) throw ParseError("'" + path + "': only maxval 255 supported");
  int c = in.get();
  if (c == EOF || !std::isspace(c))
    throw ParseError("'" + path + "': missing header terminator");
  std::vector<uint8_t> data(static_cast<size_t>(w) * h * samples_per_pixel);
  in.read(reinterpret_cast<char*>(data.data()), data.size());
  if (static_cast<size_t>(in.gcount()) != data.size())
    throw ParseError("'" + path + "': truncated pixel data");
  *width = w;
  *height = h;
  return data;
}

void write_netpbm(const std::string& path, const char* magic, int width,
                  int height, const std::vector<uint8_t>& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << magic << "\n" << width << " " << height << "\n255\n";
  out.write(reinterpret_cast<const char*>(data.data()), data.size());
}

}  // namespace

ColorImage read_ppm(const std::string& path, const GridGeometry& base) {
  int w, h;
  std::vector<uint8_t> raw = read_netpbm(path, "P6", 3, &w, &h);
  GridGeometry geom(w, h, base.spacing_h > 0 ? base.spacing_h : 1.0,
                    base.neighborhood);
  std::vector<double> data(raw.size());
  for (size_t i = 0; i < raw.size(); ++i) data[i] = raw[i] / 255.0;
  return ColorImage(geom, 3, std::move(data));
}

void write_ppm(const std::string& path, const ColorImage& img) {
  if (img.channels != 3) throw ParseError("write_ppm: image must have 3 channels");
  std::vector<uint8_t> raw(img.data.size());
  for (size_t i = 0; i < raw.size(); ++i)
    raw[i] = static_cast<uint8_t>(std::lround(img.data[i] * 255.0));
  write_netpbm(path, "P6", img.geometry.width, img.geometry.height, raw);
}

std::vector<uint8_t> read_pgm(const std::string& path, int* width, int* height) {
  return read_netpbm(path, "P5", 1, width, height);
}

void write_pgm(const std::string& path, int width, int height,
               const std::vector<uint8_t>& data) {
  write_netpbm(path, "P5", width, height, data);
}

DamageMask read_mask(const std::string& path, const GridGeometry& geom) {
  int w, h;
  std::vector<uint8_t> raw = read_pgm(path, &w, &h);
  if (w != geom.width || h != geom.height)
    throw ParseError("'" + path + "': mask size mismatch");
  std::vector<bool> mask(raw.size());
  for (size_t i = 0; i < raw.size(); ++i) mask[i] = raw[i] >= 128;
  return DamageMask(geom, std::move(mask));
}

void write_mask(const std::string& path, const DamageMask& mask) {
  std::vector<uint8_t> raw(mask.damaged.size());
  for (size_t i = 0; i < raw.size(); ++i) raw[i] = mask.damaged[i] ? 255 : 0;
  write_pgm(path, mask.geometry.width, mask.geometry.height, raw);
}

GreyObservation read_grey(const std::string& path, const GridGeometry& geom) {
  int w, h;
  std::vector<uint8_t> raw = read_pgm(path, &w, &h);
  if (w != geom.width || h != geom.height)
    throw ParseError("'" + path + "': grey size mismatch");
  std::vector<double> vals(raw.size());
  for (size_t i = 0; i < raw.size(); ++i) vals[i] = raw[i] / 255.0;
  return GreyObservation(geom, std::move(vals));
}

void write_grey(const std::string& path, const GreyObservation& g) {
  std::vector<uint8_t> raw(g.value.size());
  for (size_t i = 0; i < raw.size(); ++i)
    raw[i] = static_cast<uint8_t>(std::lround(std::clamp(g.value[i], 0.0, 1.0) * 255.0));
  write_pgm(path, g.geometry.width, g.geometry.height, raw);
}

Labeling read_labels(const std::string& path, const GridGeometry& geom) {
  int w, h;
  std::vector<uint8_t> raw = read_pgm(path, &w, &h);
  if (w != geom.width || h != geom.height)
    throw ParseError("'" + path + "': label map size mismatch");
  std::vector<int> labels(raw.size());
  for (size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] < 1) throw ParseError("'" + path + "': label value 0 (labels are 1-based)");
    labels[i] = raw[i];
  }
  return Labeling(geom, std::move(labels));
}

void write_labels(const std::string& path, const Labeling& l) {
  std::vector<uint8_t> raw(l.label.size());
  for (size_t i = 0; i < raw.size(); ++i) {
    if (l.label[i] > 255) throw ParseError("write_labels: k must be <= 255");
    raw[i] = static_cast<uint8_t>(l.label[i]);
  }
  write_pgm(path, l.geometry.width, l.geometry.height, raw);
}

Palette read_palette(const std::string& path, int channels) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::vector<double> colors;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<double> row;
    double v;
    while (ls >> v) row.push_back(v);
    if (row.empty()) continue;
    if (static_cast<int>(row.size()) != channels)
      throw ParseError("'" + path + "': palette row must have " +
                       std::to_string(channels) + " components");
    for (double c : row) {
      if (!(c >= 0.0 && c <= 1.0))
        throw ParseError("'" + path + "': palette components must be in [0,1]");
      colors.push_back(c);
    }
  }
  if (colors.empty()) throw ParseError("'" + path + "': empty palette");
  return Palette(channels, std::move(colors));
}

void write_palette(const std::string& path, const Palette& A) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out.precision(17);
  for (int i = 1; i <= A.size(); ++i) {
    const double* a = A.color(i);
    for (int c = 0; c < A.channels; ++c) out << (c ? " " : "") << a[c];
    out << "\n";
  }
}

DistortionTable read_distortion(const std::string& path, int channels) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::vector<std::pair<double, double>> samples;
  std::vector<double> e;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream ls(line.substr(1));
      std::string word;
      if (ls >> word && word == "e") {
        double v;
        while (ls >> v) e.push_back(v);
      }
      continue;
    }
    std::istringstream ls(line);
    std::string ta, lb;
    if (!std::getline(ls, ta, ',') || !std::getline(ls, lb))
      throw ParseError("'" + path + "': expected 't,L' rows");
    try {
      double t = std::stod(ta);
      double v = std::stod(lb);
      samples.push_back({t, v});
    } catch (...) {
      // Header row is allowed once.
      if (samples.empty()) continue;
      throw ParseError("'" + path + "': bad CSV row '" + line + "'");
    }
  }
  if (samples.empty()) throw ParseError("'" + path + "': empty distortion table");
  if (e.empty())
    e.assign(channels, 1.0 / std::sqrt(static_cast<double>(channels)));
  if (static_cast<int>(e.size()) != channels)
    throw ParseError("'" + path + "': direction e must have " +
                     std::to_string(channels) + " components");
  try {
    return DistortionTable(std::move(e), std::move(samples));
  } catch (const std::invalid_argument& ex) {
    throw ParseError("'" + path + "': " + ex.what());
  }
}

void write_distortion(const std::string& path, const DistortionTable& tab) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out.precision(17);
  out << "# e";
  for (double c : tab.e) out << " " << c;
  out << "\nt,L\n";
  for (auto& [t, v] : tab.samples) out << t << "," << v << "\n";
}

nlohmann::json breakdown_to_json(const EnergyBreakdown& b) {
  return {{"perimeter_term", b.perimeter_term},
          {"fidelity_outside_D", b.fidelity_outside_D},
          {"fidelity_inside_D", b.fidelity_inside_D},
          {"total", b.total}};
}

nlohmann::json trace_to_json(const SolveTrace& t) {
  return {{"energy", t.energy}, {"sweeps", t.sweeps}, {"termination", t.termination}};
}

nlohmann::json regularity_to_json(const RegularityReport& r) {
  nlohmann::json density = nlohmann::json::array();
  for (const auto& d : r.density)
    density.push_back({{"rho", d.rho},
                       {"min_density_ratio", d.min_ratio},
                       {"histogram", d.histogram}});
  nlohmann::json viol = nlohmann::json::array();
  for (const auto& v : r.elimination_violations)
    viol.push_back({{"cx", v.cx},
                    {"cy", v.cy},
                    {"r", v.r},
                    {"kept_i", v.kept_i},
                    {"kept_j", v.kept_j},
                    {"fraction", v.fraction},
                    {"inner_third_count", v.inner_third_count}});
  return {{"jump_pixel_count", r.jump_pixel_count},
          {"density", density},
          {"elimination_violations", viol},
          {"h3_satisfied", r.h3.satisfied},
          {"h3_worst_triple",
           {{"i", r.h3.i}, {"j", r.h3.j}, {"l", r.h3.l}, {"slack", r.h3.slack}}}};
}

nlohmann::json validation_to_json(const ValidationReport& r) {
  nlohmann::json issues = nlohmann::json::array();
  for (const auto& i : r.issues)
    issues.push_back({{"fatal", i.fatal}, {"message", i.message}});
  return {{"ok", r.ok}, {"issues", issues}};
}

}  // namespace io
}  // namespace pcr
