#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "convexify1d/errors.hpp"
#include "convexify1d/forward.hpp"

namespace cvx1d {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& field, int line) {
  const std::string t = trim(field);
  try {
    std::size_t used = 0;
    const double v = std::stod(t, &used);
    if (used != t.size()) throw ParseError("trailing characters in '" + t + "'", line);
    if (!std::isfinite(v)) throw ParseError("non-finite value '" + t + "'", line);
    return v;
  } catch (const std::logic_error&) {
    throw ParseError("not a number: '" + t + "'", line);
  }
}

}  // namespace

ComplexSamples read_samples_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  std::string text;
  int line = 0;
  std::vector<double> ks;
  std::vector<cplx> vals;
  bool header = false;
  while (std::getline(in, text)) {
    ++line;
    text = trim(text);
    if (text.empty()) continue;
    if (!header) {
      if (text != "k,re,im") throw ParseError("expected header 'k,re,im'", line);
      header = true;
      continue;
    }
    std::vector<std::string> fields;
    std::stringstream ss(text);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    if (fields.size() != 3) throw ParseError("expected 3 fields, got " + std::to_string(fields.size()), line);
    ks.push_back(parse_number(fields[0], line));
    vals.emplace_back(parse_number(fields[1], line), parse_number(fields[2], line));
    if (ks.size() >= 2 && !(ks.back() > ks[ks.size() - 2]))
      throw ParseError("wave numbers must increase", line);
  }
  if (!header) throw ParseError("empty file", line);
  if (ks.size() < 2) throw ParseError("need at least two rows", line);

  const int nk = static_cast<int>(ks.size()) - 1;
  FrequencyGrid grid(ks.front(), ks.back(), nk);
  for (int m = 0; m <= nk; ++m)
    if (std::abs(ks[m] - grid.node(m)) > 1e-9 * std::max(1.0, grid.k_hi))
      throw ParseError("wave-number grid is not uniform", m + 2);
  Eigen::VectorXcd v(nk + 1);
  for (int m = 0; m <= nk; ++m) v(m) = vals[m];
  return {grid, v};
}

void write_samples_csv(const std::string& path, const ComplexSamples& s) {
  std::FILE* fp = std::fopen(path.c_str(), "w");
  if (!fp) throw DataError("cannot write " + path);
  std::fprintf(fp, "k,re,im\n");
  for (int m = 0; m < s.size(); ++m)
    std::fprintf(fp, "%.17g,%.17g,%.17g\n", s.grid.node(m), s.values(m).real(), s.values(m).imag());
  std::fclose(fp);
}

}  // namespace cvx1d
