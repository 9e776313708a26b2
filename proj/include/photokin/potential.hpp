#pragma once

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "photokin/errors.hpp"

namespace photokin {

struct Grid1D {
  double x0 = 0.0;   // first node, nm
  double h = 0.0;    // spacing, nm
  std::size_t n = 0; // node count

  double x(std::size_t j) const { return x0 + h * static_cast<double>(j); }
  double x_min() const { return x0; }
  double x_max() const { return x(n - 1); }
  double span() const { return h * static_cast<double>(n - 1); }

  bool same_as(const Grid1D& o) const {
    return n == o.n && std::abs(x0 - o.x0) < 1e-12 && std::abs(h - o.h) < 1e-14;
  }
};

// Uniformly sampled 1D potential with hard-wall boundaries: psi vanishes at
// the first and last grid node.
struct Potential1D {
  enum class Boundary { HardWall };

  Grid1D grid;
  std::vector<double> v; // eV
  Boundary boundary = Boundary::HardWall;

  void validate() const {
    if (grid.n < 64) throw GridTooCoarse("potential grid needs >= 64 points, got " + std::to_string(grid.n));
    if (!(grid.h > 0.0)) throw Error("Potential1D: grid spacing must be positive");
    if (v.size() != grid.n) throw Error("Potential1D: value count does not match grid");
    for (double val : v)
      if (!std::isfinite(val)) throw Error("Potential1D: potential values must be finite");
  }

  static Potential1D flat(double x_min, double x_max, std::size_t n, double v0 = 0.0) {
    Potential1D p;
    p.grid = {x_min, (x_max - x_min) / static_cast<double>(n - 1), n};
    p.v.assign(n, v0);
    p.validate();
    return p;
  }

  template <class F>
  static Potential1D sampled(double x_min, double x_max, std::size_t n, F&& f) {
    Potential1D p;
    p.grid = {x_min, (x_max - x_min) / static_cast<double>(n - 1), n};
    p.v.resize(n);
    for (std::size_t j = 0; j < n; ++j) p.v[j] = f(p.grid.x(j));
    p.validate();
    return p;
  }

  // Two-column text: x_nm  V_eV, '#' comments, uniform spacing required.
  static Potential1D from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open potential file '" + path + "'");
    std::vector<double> xs, vs;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      std::istringstream ss(line);
      double x, val;
      if (ss >> x >> val) {
        xs.push_back(x);
        vs.push_back(val);
      } else if (line.find_first_not_of(" \t\r") != std::string::npos) {
        throw Error("potential file line " + std::to_string(lineno) + ": expected two columns");
      }
    }
    if (xs.size() < 64) throw GridTooCoarse("potential file has fewer than 64 samples");
    double h = xs[1] - xs[0];
    for (std::size_t j = 1; j < xs.size(); ++j) {
      if (!(xs[j] > xs[j - 1])) throw Error("potential file: x column must be strictly increasing");
      if (std::abs((xs[j] - xs[j - 1]) - h) > 1e-9 * std::abs(h))
        throw Error("potential file: grid must be uniform");
    }
    Potential1D p;
    p.grid = {xs[0], h, xs.size()};
    p.v = std::move(vs);
    p.validate();
    return p;
  }
};

} // namespace photokin
