#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace ettk {

struct Mat2 {
  long p = 0;
  long a = 1, b = 0, c = 0, d = 1;  // rows (a b; c d), entries reduced mod p

  long det() const;
  Mat2 operator*(const Mat2& o) const;
  bool operator==(const Mat2& o) const = default;
  bool operator<(const Mat2& o) const;
  // Image of point i, where i < p is [1:i] and i = p is [0:1].
  long act(long point) const;
};

Mat2 make_mat2(long p, long a, long b, long c, long d);
// "a,b;c,d"
Mat2 parse_mat2(long p, const std::string& s);
std::string mat2_str(const Mat2& m);
// "i~j"
std::pair<long, long> parse_merge(const std::string& s);

// [a:b] written as the subgroup generated by x^a y^b and the centre.
std::string point_label(long p, long point);

struct ProjOrbitReport {
  long p = 0;
  std::vector<std::vector<long>> orbits;  // sorted, ordered by least point
  std::vector<std::pair<long, long>> merges_applied;
  long orbit_count() const { return static_cast<long>(orbits.size()); }
};

ProjOrbitReport proj_line_orbits(long p, const std::vector<Mat2>& gens,
                                 const std::vector<std::pair<long, long>>& merges = {});
nlohmann::json orbit_report_json(const ProjOrbitReport& r);

struct MatrixGroupSignature {
  long order = 0;
  std::map<long, long> order_profile;  // element order -> count
};

MatrixGroupSignature matrix_group_signature(long p, const std::vector<Mat2>& gens);

long torsion_free_rank(long p_rank, long max_rank2_classes);
std::optional<long> high_rank_rule(long p, long p_rank);

}  // namespace ettk
