#pragma once

// Published parameter estimates of the three case-study fits (K = 8, point-
// symmetric network), in design-matrix order: gamma, a_c1, a_s1, ..., a_s8,
// b_c2, b_s2, ..., b_s8. `starred` marks the entries flagged 5% significant.

#include <array>
#include <cstddef>

namespace fixture {

struct CaseTable {
  std::size_t samples;
  std::array<double, 25> coefficient;
  std::array<double, 25> std_err;
  std::array<double, 25> t_value;
  std::array<bool, 25> starred;
};

inline constexpr CaseTable kCase1{
    10969,
    {133.08, 263.11, 52.58, -18.40, 21.84, 54.03, 85.40, 1.47, -6.62, -54.29, 55.51, -3.14, 6.27,
     61.55, 108.00, -21.25, 17.16, -14.4, 8.22, 43.93, 18.34, 1.54, -0.54, -0.49, -23.37},
    {0.51, 5.63, 6.86, 2.01, 1.89, 12.33, 11.56, 0.46, 0.43, 6.61, 6.81, 4.38, 5.02,
     14.11, 13.98, 2.01, 2.06, 1.17, 1.09, 3.14, 3.12, 1.13, 1.06, 1.75, 1.73},
    {258.96, 46.76, 7.66, -9.14, 11.58, 4.38, 7.39, 3.23, -15.24, -8.21, 8.15, -0.72, 1.25,
     4.36, 7.72, -10.58, 8.32, -12.30, 7.52, 14.01, 5.87, 1.36, -0.50, -0.28, -13.51},
    {true, true, true, true, true, true, true, true, true, true, true, false, false,
     true, true, true, true, true, true, true, true, false, false, false, true}};

inline constexpr CaseTable kCase2{
    9557,
    {127.39, 298.21, -158.73, -49.84, -3.55, 263.20, 979.97, -6.82, 0.33, -196.84, 162.29, -48.58, 19.50,
     193.99, 14.78, -39.92, 22.32, -28.49, -9.76, 69.37, 17.30, 6.89, 7.89, 7.61, -32.95},
    {0.64, 35.85, 33.74, 2.53, 2.38, 88.45, 80.58, 0.36, 0.39, 54.38, 54.16, 4.80, 5.39,
     60.28, 64.19, 2.44, 2.47, 1.53, 1.43, 3.96, 3.89, 1.04, 1.00, 1.83, 1.80},
    {198.93, 8.32, -4.70, -19.70, -1.49, 2.98, 12.16, -19.09, 0.85, -3.62, 3.00, -10.12, 3.62,
     3.22, 0.23, -16.33, 9.02, -18.65, -6.82, 17.52, 4.45, 6.63, 7.86, 4.15, -18.28},
    {true, true, true, true, false, true, true, true, false, true, true, true, true,
     true, false, true, true, true, true, true, true, true, true, true, true}};

inline constexpr CaseTable kCase3{
    3517,
    {216.41, 161.30, 138.52, -30.96, 1.29, -2.75, -46.88, -12.54, -4.75, 95.96, 35.37, -9.17, -9.70,
     71.91, 30.41, -30.56, 3.95, -16.49, -0.36, -14.96, -10.02, -11.45, 10.08, -20.13, -25.09},
    {0.81, 9.51, 11.52, 2.67, 3.13, 18.46, 20.04, 1.53, 1.61, 41.68, 41.88, 5.14, 4.93,
     35.59, 34.64, 6.18, 6.10, 1.42, 1.67, 2.03, 2.19, 5.64, 5.88, 6.34, 6.48},
    {268.16, 16.97, 12.02, -11.61, 0.41, -0.15, -2.34, -8.19, -2.95, 2.30, 0.84, -1.78, -1.97,
     2.02, 0.88, -4.95, 0.65, -11.61, -0.21, -7.38, -4.58, -2.03, 1.71, -3.18, -3.87},
    {true, true, true, true, false, false, true, true, true, true, false, false, true,
     true, false, true, false, true, false, true, true, true, false, true, true}};

inline constexpr std::size_t kParameters = 25;

}  // namespace fixture
