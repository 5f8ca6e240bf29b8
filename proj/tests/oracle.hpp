#pragma once

// Dense brute-force reference: Hamiltonians assembled from Kronecker products of
// single-site matrices, diagonalized with a dense eigensolver. Nothing here uses the
// library; tests compare the library against it.

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

namespace oracle {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

inline Mat sx() { return (Mat(2, 2) << 0, 1, 1, 0).finished(); }
inline Mat sz() { return (Mat(2, 2) << 1, 0, 0, -1).finished(); }
// i * sigma_y, kept real: (i sy) (x) (i sy) = -(sy (x) sy)
inline Mat isy() { return (Mat(2, 2) << 0, 1, -1, 0).finished(); }

inline Mat Sz1() { return Vec((Vec(3) << 1, 0, -1).finished()).asDiagonal(); }
inline Mat Sp1() {
    Mat m = Mat::Zero(3, 3);
    m(0, 1) = m(1, 2) = std::sqrt(2.0);
    return m;
}
inline Mat Sx1() { return 0.5 * (Sp1() + Sp1().transpose()); }
// i * S_y, real
inline Mat iSy1() { return 0.5 * (Sp1() - Sp1().transpose()); }

// op acting on `site` of an L-site chain; site 0 is the leftmost Kronecker factor
inline Mat site_op(const Mat& op, int site, int L) {
    const int d = static_cast<int>(op.rows());
    Mat out = Mat::Identity(1, 1);
    for (int i = 0; i < L; ++i) {
        const Mat f = i == site ? op : Mat::Identity(d, d);
        out = Eigen::kroneckerProduct(out, f).eval();
    }
    return out;
}

inline Mat two_site(const Mat& a, int i, const Mat& b, int j, int L) {
    const int d = static_cast<int>(a.rows());
    Mat out = Mat::Identity(1, 1);
    for (int s = 0; s < L; ++s) {
        const Mat f = s == i ? a : s == j ? b : Mat::Identity(d, d);
        out = Eigen::kroneckerProduct(out, f).eval();
    }
    return out;
}

inline Mat tfim(int L, double h, bool periodic = true) {
    const int n = 1 << L;
    Mat H = Mat::Zero(n, n);
    const int bonds = periodic ? L : L - 1;
    for (int i = 0; i < bonds; ++i) H -= two_site(sx(), i, sx(), (i + 1) % L, L);
    for (int i = 0; i < L; ++i) H -= h * site_op(sz(), i, L);
    return H;
}

inline Mat spin1(int L, double lambda, double D, bool periodic) {
    Mat H = Mat::Zero(static_cast<Eigen::Index>(std::pow(3, L)), static_cast<Eigen::Index>(std::pow(3, L)));
    const int bonds = periodic ? L : L - 1;
    for (int i = 0; i < bonds; ++i) {
        const int j = (i + 1) % L;
        H += two_site(Sx1(), i, Sx1(), j, L);
        H -= two_site(iSy1(), i, iSy1(), j, L);  // Sy Sy = -(iSy)(iSy)
        H += lambda * two_site(Sz1(), i, Sz1(), j, L);
    }
    for (int i = 0; i < L; ++i) H += D * site_op(Sz1() * Sz1(), i, L);
    return H;
}

// Indices of product states with an even number of down spins (sz = -1).
inline std::vector<int> even_parity_states(int L) {
    std::vector<int> out;
    for (int s = 0; s < (1 << L); ++s)
        if (__builtin_popcount(s) % 2 == 0) out.push_back(s);
    return out;
}

// Indices of spin-1 product states with total S^z = m.
inline std::vector<int> sz_states(int L, int m) {
    std::vector<int> out;
    const int n = static_cast<int>(std::pow(3, L));
    for (int s = 0; s < n; ++s) {
        int t = s, total = 0;
        for (int i = 0; i < L; ++i) {
            total += 1 - t % 3;
            t /= 3;
        }
        if (total == m) out.push_back(s);
    }
    return out;
}

inline Mat restrict(const Mat& M, const std::vector<int>& idx) {
    const auto n = static_cast<Eigen::Index>(idx.size());
    Mat out(n, n);
    for (Eigen::Index a = 0; a < n; ++a)
        for (Eigen::Index b = 0; b < n; ++b) out(a, b) = M(idx[a], idx[b]);
    return out;
}

struct Ground {
    double energy;
    Vec vector;  // in the full space
};

// Lowest state of H restricted to the listed basis states.
inline Ground ground(const Mat& H, const std::vector<int>& idx) {
    Eigen::SelfAdjointEigenSolver<Mat> es(restrict(H, idx));
    Vec full = Vec::Zero(H.rows());
    for (std::size_t a = 0; a < idx.size(); ++a) full(idx[a]) = es.eigenvectors()(static_cast<Eigen::Index>(a), 0);
    return {es.eigenvalues()(0), full};
}

inline Vec spectrum(const Mat& H, const std::vector<int>& idx) {
    Eigen::SelfAdjointEigenSolver<Mat> es(restrict(H, idx), Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

inline double expect(const Vec& v, const Mat& O) { return v.dot(O * v); }

// <s^a_0 s^a_r> on an Ising state
inline double corr_xx(const Vec& v, int r, int L) { return expect(v, two_site(sx(), 0, sx(), r, L)); }
inline double corr_yy(const Vec& v, int r, int L) { return -expect(v, two_site(isy(), 0, isy(), r, L)); }
inline double corr_zz(const Vec& v, int r, int L) { return expect(v, two_site(sz(), 0, sz(), r, L)); }

}  // namespace oracle
