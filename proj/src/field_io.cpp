#include "lsw/field_io.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <json.hpp>

namespace lsw {

static_assert(std::endian::native == std::endian::little,
              "field serialization assumes a little-endian host");
static_assert(sizeof(double) == 8 && sizeof(Complex) == 16);

namespace {

constexpr char kMagic[4] = {'L', 'S', 'F', '1'};

}  // namespace

void write_field(const std::string& path, const FieldMeta& meta,
                 const ComplexVector& data) {
  Require(meta.nx > 0 && meta.ny > 0, "field dimensions must be positive");
  Require(data.size() == static_cast<std::size_t>(meta.nx) *
                             static_cast<std::size_t>(meta.ny),
          "field data size does not match header dimensions");

  nlohmann::json header = {
      {"nx", meta.nx},         {"ny", meta.ny},
      {"index_set", meta.index_set},
      {"dtype", "c128"},       {"order", "row-major"},
      {"omega", meta.omega},   {"h", meta.h},
  };
  const std::string htext = header.dump();
  Require(htext.size() < (1u << 30), "field header too large");

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw NumericalError("cannot open for writing: " + path);
  out.write(kMagic, 4);
  const std::uint32_t hlen = static_cast<std::uint32_t>(htext.size());
  out.write(reinterpret_cast<const char*>(&hlen), 4);
  out.write(htext.data(), static_cast<std::streamsize>(htext.size()));
  out.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size() * sizeof(Complex)));
  out.flush();
  if (!out) throw NumericalError("write failed: " + path);
}

ComplexVector read_field(const std::string& path, FieldMeta& meta) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NumericalError("cannot open for reading: " + path);

  char magic[4] = {};
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0)
    throw NumericalError("not a field dump (bad magic): " + path);

  std::uint32_t hlen = 0;
  in.read(reinterpret_cast<char*>(&hlen), 4);
  if (!in || hlen == 0 || hlen >= (1u << 30))
    throw NumericalError("corrupt field header length: " + path);

  std::string htext(hlen, '\0');
  in.read(htext.data(), hlen);
  if (!in) throw NumericalError("truncated field header: " + path);

  nlohmann::json header;
  try {
    header = nlohmann::json::parse(htext);
  } catch (const nlohmann::json::exception& e) {
    throw NumericalError(std::string("invalid field header JSON: ") +
                         e.what());
  }
  if (header.value("dtype", "") != std::string("c128") ||
      header.value("order", "") != std::string("row-major"))
    throw NumericalError("unsupported field encoding in " + path);

  meta.nx = header.at("nx").get<int>();
  meta.ny = header.at("ny").get<int>();
  meta.index_set = header.value("index_set", "interior");
  meta.omega = header.value("omega", 0.0);
  meta.h = header.value("h", 0.0);
  Require(meta.nx > 0 && meta.ny > 0, "corrupt field dimensions");

  const std::size_t count =
      static_cast<std::size_t>(meta.nx) * static_cast<std::size_t>(meta.ny);
  ComplexVector data(count);
  in.read(reinterpret_cast<char*>(data.data()),
          static_cast<std::streamsize>(count * sizeof(Complex)));
  if (!in) throw NumericalError("truncated field payload: " + path);
  return data;
}

void write_pgm(const std::string& path, int nx, int ny,
               const RealVector& values) {
  Require(nx > 0 && ny > 0, "image dimensions must be positive");
  Require(values.size() == static_cast<std::size_t>(nx) *
                               static_cast<std::size_t>(ny),
          "image data size does not match dimensions");

  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it, hi = *hi_it;
  const double span = (hi > lo) ? (hi - lo) : 1.0;

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw NumericalError("cannot open for writing: " + path);
  out << "P5\n" << nx << " " << ny << "\n255\n";
  std::string row(static_cast<std::size_t>(nx), '\0');
  for (int y = 0; y < ny; ++y) {
    for (int x = 0; x < nx; ++x) {
      const double v =
          (values[static_cast<std::size_t>(y) * nx + x] - lo) / span;
      const int px = std::clamp(static_cast<int>(v * 255.0 + 0.5), 0, 255);
      row[static_cast<std::size_t>(x)] = static_cast<char>(px);
    }
    out.write(row.data(), nx);
  }
  out.flush();
  if (!out) throw NumericalError("write failed: " + path);

  nlohmann::json sidecar = {
      {"min", lo}, {"max", hi}, {"nx", nx}, {"ny", ny}};
  std::ofstream meta(path + ".json", std::ios::trunc);
  if (!meta) throw NumericalError("cannot open for writing: " + path + ".json");
  meta << sidecar.dump(2) << "\n";
}

}  // namespace lsw
