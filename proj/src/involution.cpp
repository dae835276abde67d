#include "isoperiod/involution.hpp"

namespace isoperiod {

namespace {

void require_square(const RationalMatrix& S, const RationalVector& b) {
    const size_t n = b.size();
    if (S.size() != n)
        throw DimensionMismatch("involution matrix and offset sizes differ");
    for (const auto& row : S)
        if (row.size() != n)
            throw DimensionMismatch("involution matrix is not square");
}

} // namespace

AffineInvolution::AffineInvolution(RationalMatrix S, RationalVector b)
    : S_(std::move(S)), b_(std::move(b)) {
    require_square(S_, b_);
    const int n = dimension();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            Rational acc = 0;
            for (int k = 0; k < n; ++k)
                acc += S_[i][k] * S_[k][j];
            if (acc != Rational(i == j ? 1 : 0))
                throw NotAnInvolution("S^2 differs from the identity");
        }
    }
    for (int i = 0; i < n; ++i) {
        Rational acc = b_[i];
        for (int k = 0; k < n; ++k)
            acc += S_[i][k] * b_[k];
        if (acc != 0)
            throw NotAnInvolution("S*b + b is nonzero");
    }
}

AffineInvolution AffineInvolution::mirror(int n, int axis) {
    RationalMatrix S(n, RationalVector(n, 0));
    for (int i = 0; i < n; ++i)
        S[i][i] = (i == axis) ? -1 : 1;
    return AffineInvolution(std::move(S), RationalVector(n, 0));
}

AffineInvolution AffineInvolution::point_reflection(int n) {
    RationalMatrix S(n, RationalVector(n, 0));
    for (int i = 0; i < n; ++i)
        S[i][i] = -1;
    return AffineInvolution(std::move(S), RationalVector(n, 0));
}

AffineInvolution AffineInvolution::swap_xy() {
    RationalMatrix S{{0, 1}, {1, 0}};
    return AffineInvolution(std::move(S), RationalVector(2, 0));
}

RationalVector AffineInvolution::apply_exact(const RationalVector& z) const {
    const int n = dimension();
    if (static_cast<int>(z.size()) != n)
        throw DimensionMismatch("point dimension differs from involution dimension");
    RationalVector r(n);
    for (int i = 0; i < n; ++i) {
        Rational acc = b_[i];
        for (int j = 0; j < n; ++j)
            acc += S_[i][j] * z[j];
        r[i] = acc;
    }
    return r;
}

std::vector<double> AffineInvolution::apply(std::span<const double> z) const {
    const int n = dimension();
    if (static_cast<int>(z.size()) != n)
        throw DimensionMismatch("point dimension differs from involution dimension");
    std::vector<double> r(n);
    for (int i = 0; i < n; ++i) {
        double acc = to_double(b_[i]);
        for (int j = 0; j < n; ++j)
            acc += to_double(S_[i][j]) * z[j];
        r[i] = acc;
    }
    return r;
}

bool AffineSubspace::contains(const RationalVector& z) const {
    if (z.size() != offset.size())
        return false;
    // Solve offset + sum c_k basis_k = z by exact elimination on the
    // basis columns; consistent iff z - offset lies in their span.
    const int n = static_cast<int>(offset.size());
    const int m = dim();
    RationalMatrix A(n, RationalVector(m + 1, 0));
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < m; ++k)
            A[i][k] = basis[k][i];
        A[i][m] = z[i] - offset[i];
    }
    int row = 0;
    for (int col = 0; col < m && row < n; ++col) {
        int piv = -1;
        for (int i = row; i < n; ++i)
            if (A[i][col] != 0) {
                piv = i;
                break;
            }
        if (piv < 0)
            continue;
        std::swap(A[row], A[piv]);
        for (int i = 0; i < n; ++i) {
            if (i == row || A[i][col] == 0)
                continue;
            Rational f = A[i][col] / A[row][col];
            for (int k = col; k <= m; ++k)
                A[i][k] -= f * A[row][k];
        }
        ++row;
    }
    for (int i = row; i < n; ++i)
        if (A[i][m] != 0)
            return false;
    return true;
}

AffineSubspace fixed_set(const AffineInvolution& sigma) {
    const int n = sigma.dimension();
    // (S - I) z = -b, solved by exact Gauss-Jordan elimination.
    RationalMatrix A(n, RationalVector(n + 1, 0));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j)
            A[i][j] = sigma.matrix()[i][j] - Rational(i == j ? 1 : 0);
        A[i][n] = -sigma.offset()[i];
    }

    std::vector<int> pivot_col;
    int row = 0;
    for (int col = 0; col < n && row < n; ++col) {
        int piv = -1;
        for (int i = row; i < n; ++i)
            if (A[i][col] != 0) {
                piv = i;
                break;
            }
        if (piv < 0)
            continue;
        std::swap(A[row], A[piv]);
        Rational lead = A[row][col];
        for (int k = col; k <= n; ++k)
            A[row][k] /= lead;
        for (int i = 0; i < n; ++i) {
            if (i == row || A[i][col] == 0)
                continue;
            Rational f = A[i][col];
            for (int k = col; k <= n; ++k)
                A[i][k] -= f * A[row][k];
        }
        pivot_col.push_back(col);
        ++row;
    }

    // b/2 is always a fixed point, so the system is consistent.
    AffineSubspace out;
    out.offset.assign(n, 0);
    std::vector<bool> is_pivot(n, false);
    for (size_t r = 0; r < pivot_col.size(); ++r) {
        is_pivot[pivot_col[r]] = true;
        out.offset[pivot_col[r]] = A[r][n];
    }
    for (int free_col = 0; free_col < n; ++free_col) {
        if (is_pivot[free_col])
            continue;
        RationalVector dir(n, 0);
        dir[free_col] = 1;
        for (size_t r = 0; r < pivot_col.size(); ++r)
            dir[pivot_col[r]] = -A[r][free_col];
        out.basis.push_back(std::move(dir));
    }
    return out;
}

} // namespace isoperiod
