#pragma once

#include <cctype>
#include <cstddef>
#include <string>
#include <vector>

namespace hda {

// Compares strings with digit runs ordered numerically, so "(9,2)" sorts
// before "(10,2)". Non-digit characters compare bytewise.
inline bool natural_less(const std::string& a, const std::string& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    unsigned char ca = static_cast<unsigned char>(a[i]);
    unsigned char cb = static_cast<unsigned char>(b[j]);
    if (std::isdigit(ca) && std::isdigit(cb)) {
      std::size_t ei = i, ej = j;
      while (ei < a.size() && std::isdigit(static_cast<unsigned char>(a[ei]))) ++ei;
      while (ej < b.size() && std::isdigit(static_cast<unsigned char>(b[ej]))) ++ej;
      std::size_t si = i, sj = j;
      while (si + 1 < ei && a[si] == '0') ++si;
      while (sj + 1 < ej && b[sj] == '0') ++sj;
      std::size_t la = ei - si, lb = ej - sj;
      if (la != lb) return la < lb;
      int c = a.compare(si, la, b, sj, lb);
      if (c != 0) return c < 0;
      i = ei;
      j = ej;
    } else {
      if (ca != cb) return ca < cb;
      ++i;
      ++j;
    }
  }
  return (a.size() - i) < (b.size() - j);
}

struct NaturalLess {
  bool operator()(const std::string& a, const std::string& b) const {
    return natural_less(a, b);
  }
};

inline bool natural_lex_less(const std::vector<std::string>& a,
                             const std::vector<std::string>& b) {
  std::size_t n = a.size() < b.size() ? a.size() : b.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (natural_less(a[k], b[k])) return true;
    if (natural_less(b[k], a[k])) return false;
  }
  return a.size() < b.size();
}

inline std::string join(const std::vector<std::string>& parts,
                        const std::string& sep) {
  std::string out;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (k) out += sep;
    out += parts[k];
  }
  return out;
}

}  // namespace hda
