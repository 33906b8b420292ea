#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aswtower/tower.hpp"

namespace aswtower {

struct CheckItem {
  std::string label;
  bool pass = false;
  std::string detail;
};

struct CheckReport {
  std::string suite;
  unsigned level = 0;
  std::vector<CheckItem> items;
  std::vector<std::pair<std::string, std::string>> facts;  // extra findings

  std::size_t failures() const;
  bool ok() const { return failures() == 0; }
  void add(std::string label, bool pass, std::string detail = {});
};

FuncElem T_power(const Tower& T, const FuncElem& e, std::uint64_t k);

// R_{n+1} -> R_n: y_n^i -> 0 for i < p-1, y_n^{p-1} -> -1
FuncElem trace_down(const Tower& T, const FuncElem& e);
// sum of the conjugates gamma^{p^n j}(e), j < p, as an element of R_{n+1}
FuncElem trace_by_conjugates(const Tower& T, const FuncElem& e);

CheckReport verify_taunit(const Tower& T, unsigned n);
CheckReport verify_T_triangular(const Tower& T, unsigned n);
CheckReport verify_trace(const Tower& T, unsigned n);
CheckReport verify_module_structure(const Tower& T, unsigned n);

}  // namespace aswtower
