#pragma once

// Published stencil, blending and convergence values, p = 1..4. Decimal
// entries are rounded to two significant digits.

#include <array>
#include <string>
#include <vector>

namespace reference {

struct StencilColumns {
  int p;
  std::vector<std::string> A, B, G, L, R, O;  // O: dispersion-minimized
};

inline const std::vector<StencilColumns>& stencils() {
  static const std::vector<StencilColumns> t = {
      {1, {"2", "-1"}, {"2/3", "1/6"}, {"1/2", "1/4"}, {"1", "0"}, {"1", "0"}, {"5/6", "1/12"}},
      {2,
       {"1", "-1/3", "-1/6"},
       {"11/20", "13/60", "1/120"},
       {"13/24", "2/9", "1/144"},
       {"9/16", "5/24", "1/96"},
       {"5/9", "23/108", "1/108"},
       {"67/120", "19/90", "7/720"}},
      {3,
       {"2/3", "-1/8", "-1/5", "-1/120"},
       {"151/315", "397/1680", "1/42", "1/5040"},
       {"23/48", "227/960", "19/800", "1/4800"},
       {"259/540", "17/72", "43/1800", "1/5400"},
       {"863/1800", "189/800", "143/6000", "7/36000"},
       {"3629/7560", "2377/10080", "121/5040", "1/6048"}},
      {4,
       {"35/72", "-11/360", "-17/90", "-59/2520", "-1/5040"},
       {"15619/36288", "44117/181440", "913/22680", "251/181440", "1/362880"},
       {"52063/120960", "73529/302400", "1739/43200", "2929/2116800", "23/8467200"},
       {"41651/96768", "29411/120960", "9739/241920", "1171/846720", "19/6773760"},
       {"91111/211680", "514697/2116800", "42607/1058400", "20497/14817600", "41/14817600"},
       {"156211/362880", "220543/907200", "36541/907200", "1249/907200", "13/3628800"}},
  };
  return t;
}

struct TauEntry {
  int p;
  const char* pair;
  double tau;
};

// The (p = 1, lr) cell is degenerate and absent.
inline const std::vector<TauEntry>& taus() {
  static const std::vector<TauEntry> t = {
      {1, "gg", 2.0},         {1, "gl", 0.5},          {1, "gr", 0.5},
      {1, "pl", 1.0 / 3},     {1, "pr", 1.0 / 3},      {2, "gg", 2.0},
      {2, "gl", 1.0 / 3},     {2, "gr", -0.5},         {2, "pl", 0.2},
      {2, "pr", -0.2},        {2, "lr", 0.4},          {3, "gg", 13.0 / 3},
      {3, "gl", -1.5},        {3, "gr", -22.0 / 3},    {3, "pl", -6.0 / 7},
      {3, "pr", -44.0 / 21},  {3, "lr", 22.0 / 7},     {4, "gg", 22.0},
      {4, "gl", -79.0 / 5},   {4, "gr", -145.0 / 2},   {4, "pl", -79.0 / 9},
      {4, "pr", -145.0 / 9},  {4, "lr", 580.0 / 27},
  };
  return t;
}

// Relative error of the first eigenvalue, N = 8, 16, 32, 64, p = 2, 1D.
inline constexpr std::array<double, 4> p2_full{3.4e-5, 2.1e-6, 1.3e-7, 8.1e-9};
inline constexpr std::array<double, 4> p2_radau{3.6e-6, 4.5e-7, 3.5e-8, 2.4e-9};
inline constexpr std::array<double, 4> p2_dmm{6.7e-7, 1.0e-8, 1.6e-10, 2.4e-12};

// 2D, first mode, DMM, p = 2 (N = 8..64) and p = 3 (N = 4..32).
inline constexpr std::array<double, 4> p2_dmm_2d{6.7e-7, 1.0e-8, 1.6e-10, 2.4e-12};
inline constexpr std::array<double, 4> p3_dmm_2d{1.7e-6, 7.3e-9, 2.9e-11, 1.9e-13};

}  // namespace reference
