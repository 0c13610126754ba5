#pragma once

#include <string>

#include "lsw/types.hpp"

namespace lsw {

// Binary field dump:
//   bytes 0-3   magic "LSF1"
//   bytes 4-7   little-endian u32 header length L
//   bytes 8..   L bytes of JSON header:
//               {"nx","ny","index_set","dtype":"c128","order":"row-major",
//                "omega","h"}
//   then nx*ny interleaved little-endian doubles (re, im).
struct FieldMeta {
  int nx = 0;
  int ny = 0;
  std::string index_set = "interior";
  double omega = 0.0;
  double h = 0.0;
};

void write_field(const std::string& path, const FieldMeta& meta,
                 const ComplexVector& data);
ComplexVector read_field(const std::string& path, FieldMeta& meta);

// 8-bit binary PGM with linear scaling of values onto [0, 255]; the scale
// is recorded in a JSON sidecar at `path + ".json"` so images remain
// quantitative.
void write_pgm(const std::string& path, int nx, int ny,
               const RealVector& values);

}  // namespace lsw
