#include "proxcert/instances.hpp"

namespace proxcert {

void StandardInstance::validate() const {
    if (a.rows() < 1 || a.cols() < 1)
        throw ValidationError("instance: A must have at least one row and column");
    if (static_cast<int>(b.size()) != m())
        throw ValidationError("instance: b length != m");
    if (static_cast<int>(c.size()) != n())
        throw ValidationError("instance: c length != n");
    if (m() > n())
        throw ValidationError("instance: m > n");
    if (rank(a) != m())
        throw ValidationError("rank(A) < m");
}

void MipInstance::validate() const {
    base.validate();
    for (int i : integral_indices)
        if (i < 0 || i >= base.n())
            throw ValidationError("instance: integral index out of range");
}

void GeneralInstance::validate() const {
    if (b.rows() != m())
        throw ValidationError("instance: A and B row count differ");
    if (c_mat.cols() != d())
        throw ValidationError("instance: B and C column count differ");
    if (n() + d() < 1)
        throw ValidationError("instance: no variables");
    if (static_cast<int>(b1.size()) != m())
        throw ValidationError("instance: b1 length != m");
    if (static_cast<int>(b2.size()) != t())
        throw ValidationError("instance: b2 length != t");
    if (static_cast<int>(c.size()) != n() + d())
        throw ValidationError("instance: c length != n + d");
    if (m() > 0 && rank(hcat(a, b)) != m())
        throw ValidationError("rank([A,B]) < m");
}

std::string to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "optimal";
        case SolveStatus::Infeasible: return "infeasible";
        case SolveStatus::Unbounded: return "unbounded";
        case SolveStatus::ResourceLimit: return "resource-limit";
    }
    return "unknown";
}

} // namespace proxcert
