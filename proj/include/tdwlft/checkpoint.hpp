#pragma once

// Model checkpoints as text:
//
//   LFT v1 I J K R
//   I lines of R reals (sensor factors)
//   J lines of R reals (interval factors)
//   K lines of R reals (day factors)
//
// Reals are written in shortest round-trip form, so reading a written
// checkpoint reproduces the model bit for bit.

#include <cmath>
#include <cstddef>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "tdwlft/error.hpp"
#include "tdwlft/format.hpp"
#include "tdwlft/model.hpp"

namespace tdwlft {

inline void write_checkpoint(const FactorModel& m, std::ostream& out) {
  const Dims d = m.dims();
  out << "LFT v1 " << d.i << ' ' << d.j << ' ' << d.k << ' ' << m.rank() << '\n';
  for (const auto* mat : {&m.u, &m.s, &m.t}) {
    for (std::size_t row = 0; row < mat->rows(); ++row) {
      const auto vals = mat->row(row);
      for (std::size_t r = 0; r < vals.size(); ++r) {
        if (r) out << ' ';
        out << format_real(vals[r]);
      }
      out << '\n';
    }
  }
}

inline std::string write_checkpoint(const FactorModel& m) {
  std::ostringstream out;
  write_checkpoint(m, out);
  return out.str();
}

inline FactorModel read_checkpoint(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next_tokens = [&]() {
    while (std::getline(in, line)) {
      ++line_no;
      auto toks = tokenize(line);
      if (!toks.empty()) return toks;
    }
    throw ParseError(line_no + 1, 1, "unexpected end of checkpoint");
  };

  const auto header = next_tokens();
  if (header.size() != 6 || header[0].text != "LFT" || header[1].text != "v1") {
    throw ParseError(line_no, 1, "expected header 'LFT v1 I J K R'");
  }
  const std::size_t di = parse_count(header[2], line_no);
  const std::size_t dj = parse_count(header[3], line_no);
  const std::size_t dk = parse_count(header[4], line_no);
  const std::size_t rank = parse_count(header[5], line_no);
  if (di == 0 || dj == 0 || dk == 0 || rank == 0) {
    throw ParseError(line_no, header[2].column, "dimensions and rank must be positive");
  }

  auto read_matrix = [&](std::size_t rows) {
    FactorMatrix mat(rows, rank);
    for (std::size_t row = 0; row < rows; ++row) {
      const auto toks = next_tokens();
      if (toks.size() != rank) {
        throw ParseError(line_no, 1, "expected " + std::to_string(rank) + " values, got " +
                                         std::to_string(toks.size()));
      }
      for (std::size_t r = 0; r < rank; ++r) {
        const double v = parse_real(toks[r], line_no);
        if (!std::isfinite(v)) throw ParseError(line_no, toks[r].column, "non-finite factor");
        mat(row, r) = v;
      }
    }
    return mat;
  };
  FactorMatrix u = read_matrix(di);
  FactorMatrix s = read_matrix(dj);
  FactorMatrix t = read_matrix(dk);
  return make_model(std::move(u), std::move(s), std::move(t));
}

inline FactorModel read_checkpoint(const std::string& text) {
  std::istringstream in(text);
  return read_checkpoint(in);
}

}  // namespace tdwlft
