#ifndef PROXCERT_INSTANCES_HPP
#define PROXCERT_INSTANCES_HPP

#include "proxcert/exact_linalg.hpp"

#include <set>
#include <string>

namespace proxcert {

// max { c^T z : A z = b, z >= 0 }. Loaded instances must satisfy
// rank(A) = m and m <= n.
struct StandardInstance {
    IntMatrix a;
    IntVec b;
    IntVec c;

    int m() const { return a.rows(); }
    int n() const { return a.cols(); }
    void validate() const;
};

// Standard form plus an integrality mark set I (0-based column indices).
struct MipInstance {
    StandardInstance base;
    std::set<int> integral_indices;

    void validate() const;
};

// max { c^T z : [A,B] z = b1, [0,C] z <= b2, z integer,
//               z_i >= 0 for the first n components }.
struct GeneralInstance {
    IntMatrix a;   // m x n
    IntMatrix b;   // m x d
    IntMatrix c_mat;  // t x d
    IntVec b1;     // m
    IntVec b2;     // t
    IntVec c;      // n + d objective

    int m() const { return a.rows(); }
    int n() const { return a.cols(); }
    int d() const { return b.cols(); }
    int t() const { return c_mat.rows(); }
    void validate() const;
};

enum class SolveStatus { Optimal, Infeasible, Unbounded, ResourceLimit };

std::string to_string(SolveStatus s);

} // namespace proxcert

#endif
