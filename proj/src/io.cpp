#include "tmodel/io.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "tmodel/errors.hpp"

namespace tmodel {

namespace fs = std::filesystem;

void write_series_csv(const fs::path& path, const std::vector<TimeValue>& samples) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << "t,value\n";
  char buf[64];
  for (const auto& s : samples) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", s.t, s.value);
    out << buf;
  }
  if (!out) throw IoError("write failed for " + path.string());
}

std::vector<TimeValue> read_series_csv(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw IoError(path.string() + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "t,value") throw IoError(path.string() + ": expected header 't,value'");
  std::vector<TimeValue> out;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    try {
      if (comma == std::string::npos) throw std::invalid_argument("no comma");
      out.push_back({std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1))});
    } catch (const std::logic_error&) {
      throw IoError(path.string() + ":" + std::to_string(lineno) + ": malformed row '" + line + "'");
    }
  }
  return out;
}

namespace {

std::uint64_t to_little(std::uint64_t x) {
  if constexpr (std::endian::native == std::endian::little) return x;
  std::uint64_t r = 0;
  for (int i = 0; i < 8; ++i) r = (r << 8) | ((x >> (8 * i)) & 0xff);
  return r;
}

fs::path sidecar(const fs::path& p) { return fs::path(p.string() + ".json"); }

}  // namespace

void write_snapshot(const fs::path& path, const SpectralField& field, double t) {
  const auto& p = field.partition();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  for (std::size_t i = 0; i < p.volume(); ++i)
    for (int c = 0; c < field.components(); ++c) {
      const cplx z = field.at(c, i);
      for (double x : {z.real(), z.imag()}) {
        const std::uint64_t bits = to_little(std::bit_cast<std::uint64_t>(x));
        out.write(reinterpret_cast<const char*>(&bits), sizeof bits);
      }
    }
  if (!out) throw IoError("write failed for " + path.string());

  nlohmann::json meta{
      {"format", "tmodel-spectral-snapshot"},
      {"version", 1},
      {"dim", p.dim()},
      {"n", p.n()},
      {"m", p.m()},
      {"components", field.components()},
      {"t", t},
      {"dtype", "float64 little-endian, (re, im) pairs"},
      {"layout", "k from -m to m per axis, axis 0 slowest; components fastest within a mode"},
  };
  std::ofstream side(sidecar(path), std::ios::binary);
  if (!side) throw IoError("cannot open " + sidecar(path).string() + " for writing");
  side << meta.dump(2) << '\n';
}

SpectralField read_snapshot(const fs::path& path) {
  std::ifstream side(sidecar(path), std::ios::binary);
  if (!side) throw IoError("missing snapshot sidecar " + sidecar(path).string());
  nlohmann::json meta;
  try {
    side >> meta;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(sidecar(path).string() + ": " + e.what());
  }
  const int dim = meta.at("dim").get<int>();
  const int n = meta.at("n").get<int>();
  const int comps = meta.at("components").get<int>();
  SpectralField field(ModePartition::build(dim, n), comps);
  const auto& p = field.partition();
  if (meta.at("m").get<int>() != p.m()) throw IoError(path.string() + ": sidecar m does not equal 2n");

  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  const auto expected = std::uintmax_t(p.volume()) * std::uintmax_t(comps) * 16;
  if (fs::file_size(path) != expected)
    throw IoError(path.string() + ": size " + std::to_string(fs::file_size(path)) + " does not match " +
                  std::to_string(expected) + " bytes implied by the sidecar");
  for (std::size_t i = 0; i < p.volume(); ++i)
    for (int c = 0; c < comps; ++c) {
      double parts[2];
      for (double& x : parts) {
        std::uint64_t bits;
        in.read(reinterpret_cast<char*>(&bits), sizeof bits);
        x = std::bit_cast<double>(to_little(bits));
      }
      field.at(c, i) = {parts[0], parts[1]};
    }
  if (!in) throw IoError("read failed for " + path.string());
  return field;
}

}  // namespace tmodel
