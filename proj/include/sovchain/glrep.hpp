#pragma once

#include "sovchain/matrix.hpp"
#include "sovchain/partitions.hpp"
#include "sovchain/ring.hpp"

#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace sovchain {

namespace detail {

/// All permutations of {0..n-1} as index vectors.
inline std::vector<std::vector<int>> all_permutations(int n)
{
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> out;
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

inline int perm_sign(const std::vector<int>& p)
{
    int s = 1;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) s = -s;
    return s;
}

/// Hook-length count of standard tableaux of the given shape.
inline long standard_tableau_count(const Partition& nu)
{
    const int n = nu.boxes();
    long fact = 1;
    for (int k = 2; k <= n; ++k) fact *= k;
    const Partition t = nu.transpose();
    long hooks = 1;
    for (int r = 1; r <= nu.height(); ++r)
        for (int c = 1; c <= nu.part(static_cast<std::size_t>(r - 1)); ++c)
            hooks *= (nu.part(static_cast<std::size_t>(r - 1)) - c) +
                     (t.part(static_cast<std::size_t>(c - 1)) - r) + 1;
    return fact / hooks;
}

} // namespace detail

/// Finite-dimensional gl(n_colors) irrep carved out of (C^n)^{x boxes}
/// by the Young projector of a fixed shape.  Basis vectors are weight
/// vectors (pivot columns of the projector); the embedding matrix maps
/// irrep coordinates into the ambient tensor space.
template <class R>
struct Rep {
    int n_colors = 0;
    int boxes = 0;
    Partition shape;
    std::size_t dim = 0;
    std::size_t ambient_dim = 0;
    Matrix<R> projector;                  // ambient_dim x ambient_dim, idempotent
    Matrix<R> embed;                      // ambient_dim x dim
    std::vector<Matrix<R>> gen;           // gen[i*n + j] = E_{i+1,j+1}, dim x dim
    std::vector<std::vector<int>> weight; // per basis vector, length n_colors

    const Matrix<R>& e(int i, int j) const
    {
        return gen[static_cast<std::size_t>((i - 1) * n_colors + (j - 1))];
    }

    /// Restriction of g x g x ... x g (one factor per box) to the irrep.
    Matrix<R> group_element(const Matrix<R>& g) const
    {
        Matrix<R> big = Matrix<R>::identity(1);
        for (int k = 0; k < boxes; ++k) big = Matrix<R>::kron(big, g);
        return embed.solve_tall(big * embed);
    }
};

/// E_{ij} acting diagonally on (C^n)^{x nboxes}.
template <class R>
Matrix<R> tensor_generator(int n, int nboxes, int i, int j)
{
    Matrix<R> unit(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    unit(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)) = R(1);
    std::size_t dim = 1;
    for (int k = 0; k < nboxes; ++k) dim *= static_cast<std::size_t>(n);
    Matrix<R> total(dim, dim);
    for (int slot = 0; slot < nboxes; ++slot) {
        Matrix<R> m = Matrix<R>::identity(1);
        for (int k = 0; k < nboxes; ++k)
            m = Matrix<R>::kron(m, k == slot ? unit : Matrix<R>::identity(static_cast<std::size_t>(n)));
        total = total + m;
    }
    return total;
}

/// Matrix of the place permutation sending tensor factor k to slot p[k]
/// on (C^n)^{x nboxes}.
template <class R>
Matrix<R> place_permutation(int n, const std::vector<int>& p)
{
    const int nboxes = static_cast<int>(p.size());
    std::size_t dim = 1;
    for (int k = 0; k < nboxes; ++k) dim *= static_cast<std::size_t>(n);
    Matrix<R> m(dim, dim);
    std::vector<int> idx(static_cast<std::size_t>(nboxes), 0);
    for (std::size_t col = 0; col < dim; ++col) {
        // decode col as (i_1..i_nboxes), most significant first
        std::size_t rest = col;
        for (int k = nboxes - 1; k >= 0; --k) {
            idx[static_cast<std::size_t>(k)] = static_cast<int>(rest % static_cast<std::size_t>(n));
            rest /= static_cast<std::size_t>(n);
        }
        std::size_t row = 0;
        std::vector<int> out(static_cast<std::size_t>(nboxes), 0);
        for (int k = 0; k < nboxes; ++k)
            out[static_cast<std::size_t>(p[static_cast<std::size_t>(k)])] =
                idx[static_cast<std::size_t>(k)];
        for (int k = 0; k < nboxes; ++k)
            row = row * static_cast<std::size_t>(n) + static_cast<std::size_t>(out[static_cast<std::size_t>(k)]);
        m(row, col) = R(1);
    }
    return m;
}

/// Idempotent Young projector for the given shape (boxes numbered
/// row-major), acting on (C^n)^{x boxes}: column antisymmetrizer times
/// row symmetrizer, scaled so that P^2 = P.
template <class R>
Matrix<R> young_projector(int n, const Partition& nu)
{
    const int nboxes = nu.boxes();
    std::size_t dim = 1;
    for (int k = 0; k < nboxes; ++k) dim *= static_cast<std::size_t>(n);
    if (nboxes == 0) return Matrix<R>::identity(dim);

    // box numbers by row and by column (row-major numbering)
    std::vector<std::vector<int>> row_boxes, col_boxes(static_cast<std::size_t>(nu.width()));
    int counter = 0;
    for (int r = 0; r < nu.height(); ++r) {
        std::vector<int> row;
        for (int c = 0; c < nu.part(static_cast<std::size_t>(r)); ++c) {
            row.push_back(counter);
            col_boxes[static_cast<std::size_t>(c)].push_back(counter);
            ++counter;
        }
        row_boxes.push_back(std::move(row));
    }

    auto group_sum = [&](const std::vector<std::vector<int>>& blocks, bool signed_sum) {
        Matrix<R> total = Matrix<R>::identity(dim);
        bool first = true;
        for (const auto& block : blocks) {
            const int b = static_cast<int>(block.size());
            Matrix<R> part(dim, dim);
            for (const auto& sigma : detail::all_permutations(b)) {
                std::vector<int> full(static_cast<std::size_t>(nboxes));
                std::iota(full.begin(), full.end(), 0);
                for (int k = 0; k < b; ++k)
                    full[static_cast<std::size_t>(block[static_cast<std::size_t>(k)])] =
                        block[static_cast<std::size_t>(sigma[static_cast<std::size_t>(k)])];
                Matrix<R> pm = place_permutation<R>(n, full);
                if (signed_sum && detail::perm_sign(sigma) < 0) pm = -pm;
                part = part + pm;
            }
            total = first ? part : total * part;
            first = false;
        }
        return total;
    };

    Matrix<R> sym = group_sum(row_boxes, false);
    Matrix<R> antisym = group_sum(col_boxes, true);
    long fact = 1;
    for (int k = 2; k <= nboxes; ++k) fact *= k;
    const R scale = R(detail::standard_tableau_count(nu)) / R(fact);
    return (antisym * sym) * scale;
}

/// Builds the irrep of highest weight nu inside (C^n)^{x boxes}.
template <class R>
Rep<R> build_rep(int n, const Partition& nu)
{
    Rep<R> rep;
    rep.n_colors = n;
    rep.boxes = nu.boxes();
    rep.shape = nu;

    rep.projector = young_projector<R>(n, nu);
    const Matrix<R>& p = rep.projector;
    rep.ambient_dim = p.rows();
    Matrix<R> echelon = p;
    std::vector<std::size_t> pivots = echelon.row_reduce();
    rep.dim = pivots.size();
    if (static_cast<long>(rep.dim) != weyl_dim(nu, n))
        throw std::runtime_error("build_rep: projector rank disagrees with dimension formula");

    std::vector<std::size_t> all_rows(rep.ambient_dim);
    std::iota(all_rows.begin(), all_rows.end(), static_cast<std::size_t>(0));
    rep.embed = p.submatrix(all_rows, pivots);

    // weight of column P e_I equals the color content of I
    for (std::size_t col : pivots) {
        std::vector<int> w(static_cast<std::size_t>(n), 0);
        std::size_t rest = col;
        for (int k = 0; k < rep.boxes; ++k) {
            ++w[rest % static_cast<std::size_t>(n)];
            rest /= static_cast<std::size_t>(n);
        }
        rep.weight.push_back(std::move(w));
    }

    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            Matrix<R> big = tensor_generator<R>(n, rep.boxes, i, j);
            rep.gen.push_back(rep.embed.solve_tall(big * rep.embed));
        }
    return rep;
}

/// Coordinates (in the irrep basis) of the lowest-weight vector: each box
/// in row r of a column of height h carries color n - h + r.  Defined up
/// to scale; normalized so the first nonzero coordinate is 1.
template <class R>
Matrix<R> lws_vector(const Rep<R>& rep)
{
    const Partition t = rep.shape.transpose();
    std::size_t index = 0;
    for (int r = 0; r < rep.shape.height(); ++r)
        for (int c = 0; c < rep.shape.part(static_cast<std::size_t>(r)); ++c) {
            const int h = t.part(static_cast<std::size_t>(c));
            const int color = rep.n_colors - h + r; // 0-based
            index = index * static_cast<std::size_t>(rep.n_colors) + static_cast<std::size_t>(color);
        }
    Matrix<R> unit(rep.ambient_dim, 1);
    unit(index, 0) = R(1);
    Matrix<R> ambient = rep.projector * unit;
    if (ambient.is_zero())
        throw std::runtime_error("lws_vector: projector annihilates the seed vector");
    Matrix<R> coords = rep.embed.solve_tall(ambient);
    // normalize first nonzero coordinate to 1
    for (std::size_t i = 0; i < coords.rows(); ++i)
        if (!RingTraits<R>::is_zero(coords(i, 0), 0.0)) {
            const R inv = R(1) / coords(i, 0);
            for (std::size_t k = 0; k < coords.rows(); ++k) coords(k, 0) *= inv;
            break;
        }
    return coords;
}

} // namespace sovchain
