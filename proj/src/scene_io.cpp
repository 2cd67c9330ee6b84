#include "polgd/scene_io.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

#include "polgd/error.hpp"

namespace fs = std::filesystem;

namespace polgd {

namespace {

template <class T>
T to_little(T v) {
  if constexpr (std::endian::native == std::endian::big) {
    unsigned char b[sizeof(T)];
    std::memcpy(b, &v, sizeof(T));
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(b[i], b[sizeof(T) - 1 - i]);
    std::memcpy(&v, b, sizeof(T));
  }
  return v;
}

std::size_t sample_size(SampleType t) { return t == SampleType::float32 ? 4 : 8; }

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::map<std::string, std::string> read_key_values(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw Error("cannot open header " + file.string());
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(file.string() + " line " + std::to_string(lineno) + ": expected key=value");
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

const std::string& require(const std::map<std::string, std::string>& kv, const std::string& key,
                           const fs::path& file) {
  auto it = kv.find(key);
  if (it == kv.end()) throw Error(file.string() + ": missing key '" + key + "'");
  return it->second;
}

std::size_t parse_positive(const std::string& v, const std::string& key) {
  std::size_t pos = 0;
  long long x = 0;
  try {
    x = std::stoll(v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != v.size() || x <= 0) throw Error("header key '" + key + "' must be a positive integer (got '" + v + "')");
  return static_cast<std::size_t>(x);
}

bool is_complex_component(const std::string& name) { return name != "T11" && name != "T22" && name != "T33"; }

}  // namespace

std::vector<std::string> component_names(SceneKind kind) {
  if (kind == SceneKind::T3) return {"T11", "T22", "T33", "T12", "T13", "T23"};
  return {"HH", "HV", "VH", "VV"};
}

SceneHeader SceneHeader::parse(const fs::path& header_file) {
  const auto kv = read_key_values(header_file);
  SceneHeader h;
  h.rows = parse_positive(require(kv, "rows", header_file), "rows");
  h.cols = parse_positive(require(kv, "cols", header_file), "cols");
  const std::string& looks = require(kv, "looks", header_file);
  try {
    h.looks = std::stod(looks);
  } catch (const std::exception&) {
    throw Error("header key 'looks' is not a number (got '" + looks + "')");
  }
  if (!(h.looks > 0.0)) throw Error("header key 'looks' must be positive");

  const std::string& kind = require(kv, "kind", header_file);
  if (kind == "T3")
    h.kind = SceneKind::T3;
  else if (kind == "S2")
    h.kind = SceneKind::S2;
  else
    throw Error("header key 'kind' must be T3 or S2 (got '" + kind + "')");

  if (auto it = kv.find("byte_order"); it != kv.end() && it->second != "little")
    throw Error("only byte_order=little is supported");
  if (auto it = kv.find("dtype"); it != kv.end()) {
    if (it->second == "float32")
      h.dtype = SampleType::float32;
    else if (it->second == "float64")
      h.dtype = SampleType::float64;
    else
      throw Error("header key 'dtype' must be float32 or float64");
  }
  for (const auto& c : component_names(h.kind)) h.files[c] = require(kv, c, header_file);
  return h;
}

void SceneHeader::write(const fs::path& header_file) const {
  std::ofstream out(header_file, std::ios::trunc);
  if (!out) throw Error("cannot write " + header_file.string());
  out << "rows=" << rows << "\n"
      << "cols=" << cols << "\n";
  out.precision(17);
  out << "looks=" << looks << "\n"
      << "kind=" << (kind == SceneKind::T3 ? "T3" : "S2") << "\n"
      << "byte_order=little\n"
      << "dtype=" << (dtype == SampleType::float32 ? "float32" : "float64") << "\n";
  for (const auto& c : component_names(kind)) out << c << "=" << files.at(c) << "\n";
  if (!out) throw Error("failed writing " + header_file.string());
}

void write_samples(const fs::path& file, std::span<const double> values, SampleType dtype) {
  std::vector<char> bytes(values.size() * sample_size(dtype));
  char* p = bytes.data();
  for (double v : values) {
    if (dtype == SampleType::float32) {
      const float f = to_little(static_cast<float>(v));
      std::memcpy(p, &f, 4);
      p += 4;
    } else {
      const double d = to_little(v);
      std::memcpy(p, &d, 8);
      p += 8;
    }
  }
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + file.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("failed writing " + file.string());
}

std::vector<double> read_samples(const fs::path& file, SampleType dtype, std::size_t expected, const std::string& what) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(what + ": cannot open " + file.string());
  std::vector<char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const std::size_t sz = sample_size(dtype);
  if (bytes.size() != expected * sz)
    throw Error(what + ": expected " + std::to_string(expected) + " values, found " + std::to_string(bytes.size() / sz) +
                (bytes.size() % sz ? " and a partial value" : ""));
  std::vector<double> values(expected);
  const char* p = bytes.data();
  for (std::size_t i = 0; i < expected; ++i) {
    if (dtype == SampleType::float32) {
      float f;
      std::memcpy(&f, p + i * 4, 4);
      values[i] = to_little(f);
    } else {
      double d;
      std::memcpy(&d, p + i * 8, 8);
      values[i] = to_little(d);
    }
  }
  return values;
}

Scene read_scene(const fs::path& dir) {
  const SceneHeader h = SceneHeader::parse(dir / "header.txt");
  const std::size_t n = h.rows * h.cols;
  std::map<std::string, std::vector<double>> data;
  for (const auto& c : component_names(h.kind)) {
    const std::size_t count = is_complex_component(c) ? 2 * n : n;
    data[c] = read_samples(dir / h.files.at(c), h.dtype, count, "component " + c);
  }
  auto cx = [&](const std::string& c, std::size_t i) { return cplx(data[c][2 * i], data[c][2 * i + 1]); };

  if (h.kind == SceneKind::T3) {
    CoherencyRaster r(h.rows, h.cols, h.looks);
    for (std::size_t i = 0; i < n; ++i) {
      CoherencyMatrix t{data["T11"][i], data["T22"][i], data["T33"][i], cx("T12", i), cx("T13", i), cx("T23", i)};
      const bool finite = std::isfinite(t.t11) && std::isfinite(t.t22) && std::isfinite(t.t33) &&
                          std::isfinite(std::abs(t.t12)) && std::isfinite(std::abs(t.t13)) &&
                          std::isfinite(std::abs(t.t23));
      if (finite)
        r.pixels[i] = t;
      else
        r.valid[i] = 0;
    }
    return r;
  }

  SinclairRaster r(h.rows, h.cols, h.looks);
  for (std::size_t i = 0; i < n; ++i) {
    const cplx hh = cx("HH", i), hv = cx("HV", i), vh = cx("VH", i), vv = cx("VV", i);
    const bool finite = std::isfinite(std::abs(hh)) && std::isfinite(std::abs(hv)) && std::isfinite(std::abs(vh)) &&
                        std::isfinite(std::abs(vv));
    if (finite)
      r.pixels[i] = SinclairMatrix::from_measurement(hh, hv, vh, vv);
    else
      r.valid[i] = 0;
  }
  return r;
}

namespace {

void prepare_dir(const fs::path& dir, std::size_t n) {
  if (n == 0) throw Error("cannot write an empty raster");
  fs::create_directories(dir);
}

}  // namespace

void write_scene(const CoherencyRaster& raster, const fs::path& dir, SampleType dtype) {
  raster.check_shape();
  const std::size_t n = raster.size();
  prepare_dir(dir, n);
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();

  SceneHeader h{raster.rows, raster.cols, raster.looks, SceneKind::T3, dtype, {}};
  for (const auto& c : component_names(SceneKind::T3)) h.files[c] = c + ".bin";

  std::vector<double> t11(n), t22(n), t33(n), t12(2 * n), t13(2 * n), t23(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const bool ok = raster.is_valid(i);
    const auto& t = raster.pixels[i];
    t11[i] = ok ? t.t11 : nan;
    t22[i] = ok ? t.t22 : nan;
    t33[i] = ok ? t.t33 : nan;
    t12[2 * i] = ok ? t.t12.real() : nan;
    t12[2 * i + 1] = ok ? t.t12.imag() : nan;
    t13[2 * i] = ok ? t.t13.real() : nan;
    t13[2 * i + 1] = ok ? t.t13.imag() : nan;
    t23[2 * i] = ok ? t.t23.real() : nan;
    t23[2 * i + 1] = ok ? t.t23.imag() : nan;
  }
  write_samples(dir / h.files["T11"], t11, dtype);
  write_samples(dir / h.files["T22"], t22, dtype);
  write_samples(dir / h.files["T33"], t33, dtype);
  write_samples(dir / h.files["T12"], t12, dtype);
  write_samples(dir / h.files["T13"], t13, dtype);
  write_samples(dir / h.files["T23"], t23, dtype);
  h.write(dir / "header.txt");
}

void write_scene(const SinclairRaster& raster, const fs::path& dir) {
  raster.check_shape();
  const std::size_t n = raster.size();
  prepare_dir(dir, n);
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();

  SceneHeader h{raster.rows, raster.cols, raster.looks, SceneKind::S2, SampleType::float32, {}};
  for (const auto& c : component_names(SceneKind::S2)) h.files[c] = c + ".bin";

  std::vector<double> hh(2 * n), hv(2 * n), vv(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const bool ok = raster.is_valid(i);
    const auto& s = raster.pixels[i];
    hh[2 * i] = ok ? s.hh().real() : nan;
    hh[2 * i + 1] = ok ? s.hh().imag() : nan;
    hv[2 * i] = ok ? s.hv().real() : nan;
    hv[2 * i + 1] = ok ? s.hv().imag() : nan;
    vv[2 * i] = ok ? s.vv().real() : nan;
    vv[2 * i + 1] = ok ? s.vv().imag() : nan;
  }
  write_samples(dir / h.files["HH"], hh);
  write_samples(dir / h.files["HV"], hv);
  write_samples(dir / h.files["VH"], hv);
  write_samples(dir / h.files["VV"], vv);
  h.write(dir / "header.txt");
}

void write_labels(const LabelRaster& labels, const fs::path& bin, const fs::path& hdr) {
  if (labels.labels.size() != labels.rows * labels.cols) throw Error("label raster payload does not match its shape");
  std::vector<char> bytes(labels.labels.size() * 2);
  for (std::size_t i = 0; i < labels.labels.size(); ++i) {
    const std::uint16_t v = to_little(labels.labels[i]);
    std::memcpy(bytes.data() + 2 * i, &v, 2);
  }
  std::ofstream out(bin, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + bin.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));

  std::ofstream h(hdr, std::ios::trunc);
  if (!h) throw Error("cannot write " + hdr.string());
  h << "rows=" << labels.rows << "\n"
    << "cols=" << labels.cols << "\n"
    << "dtype=uint16\n"
    << "byte_order=little\n"
    << "masked=" << kMaskedLabel << "\n"
    << "classes_per_category=" << labels.classes_per_category << "\n"
    << "label_encoding=category*classes_per_category+class\n"
    << "categories=trihedral,dihedral,random_volume\n";
}

LabelRaster read_labels(const fs::path& bin, const fs::path& hdr) {
  const auto kv = read_key_values(hdr);
  LabelRaster out;
  out.rows = parse_positive(require(kv, "rows", hdr), "rows");
  out.cols = parse_positive(require(kv, "cols", hdr), "cols");
  out.classes_per_category = static_cast<int>(parse_positive(require(kv, "classes_per_category", hdr), "classes_per_category"));
  std::ifstream in(bin, std::ios::binary);
  if (!in) throw Error("cannot open " + bin.string());
  std::vector<char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (bytes.size() != out.rows * out.cols * 2)
    throw Error("labels: expected " + std::to_string(out.rows * out.cols) + " values");
  out.labels.resize(out.rows * out.cols);
  for (std::size_t i = 0; i < out.labels.size(); ++i) {
    std::uint16_t v;
    std::memcpy(&v, bytes.data() + 2 * i, 2);
    out.labels[i] = to_little(v);
  }
  return out;
}

}  // namespace polgd
