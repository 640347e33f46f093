#pragma once

#include "sovchain/config.hpp"
#include "sovchain/yangian.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>

namespace sovchain {

/// Bump to invalidate caches when serialized object layouts change.
inline constexpr std::uint32_t cache_format_version = 1;

inline std::uint64_t fnv1a(const std::string& s)
{
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

/// Content key for the chain data an object depends on.  Objects that are
/// twist-independent (monodromy, separating operator, covector basis) are
/// keyed without z, so changing the twist alone keeps their cache entries
/// valid.
inline std::string spec_hash(const ChainSpec<Rational>& spec, bool include_z)
{
    std::ostringstream s;
    s << "v" << cache_format_version << ";N=" << spec.N << ";A=" << spec.A << ";S=" << spec.S
      << ";L=" << spec.L << ";hbar=" << rational_to_string(spec.hbar) << ";theta=";
    for (const auto& t : spec.theta) s << rational_to_string(t) << ",";
    if (include_z) {
        s << ";z=";
        for (const auto& z : spec.z) s << rational_to_string(z) << ",";
    }
    std::ostringstream hex;
    hex << std::hex << fnv1a(s.str());
    return hex.str();
}

namespace detail {

inline void put_u64(std::ostream& out, std::uint64_t v)
{
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(b, 8);
}

inline bool get_u64(std::istream& in, std::uint64_t& v)
{
    char b[8];
    if (!in.read(b, 8)) return false;
    v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(b[i])) << (8 * i);
    return true;
}

inline void put_scalar(std::ostream& out, const Rational& x)
{
    const std::string s = rational_to_string(x);
    put_u64(out, s.size());
    out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

inline bool get_scalar(std::istream& in, Rational& x)
{
    std::uint64_t n = 0;
    if (!get_u64(in, n) || n > (1u << 20)) return false;
    std::string s(static_cast<std::size_t>(n), '\0');
    if (!in.read(s.data(), static_cast<std::streamsize>(n))) return false;
    x = rational_from_string(s);
    return true;
}

inline void put_matrix(std::ostream& out, const Matrix<Rational>& m)
{
    put_u64(out, m.rows());
    put_u64(out, m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) put_scalar(out, m(i, j));
}

inline bool get_matrix(std::istream& in, Matrix<Rational>& m)
{
    std::uint64_t rows = 0, cols = 0;
    if (!get_u64(in, rows) || !get_u64(in, cols)) return false;
    Matrix<Rational> out(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (!get_scalar(in, out(i, j))) return false;
    m = std::move(out);
    return true;
}

inline void put_oppoly(std::ostream& out, const OpPoly<Rational>& p)
{
    put_u64(out, p.dim());
    put_u64(out, static_cast<std::uint64_t>(p.degree() + 1));
    for (int k = 0; k <= p.degree(); ++k) put_matrix(out, p.coeff(static_cast<std::size_t>(k)));
}

inline bool get_oppoly(std::istream& in, OpPoly<Rational>& p)
{
    std::uint64_t dim = 0, n = 0;
    if (!get_u64(in, dim) || !get_u64(in, n)) return false;
    std::vector<Matrix<Rational>> coeffs;
    for (std::uint64_t k = 0; k < n; ++k) {
        Matrix<Rational> m;
        if (!get_matrix(in, m)) return false;
        coeffs.push_back(std::move(m));
    }
    p = OpPoly<Rational>(static_cast<std::size_t>(dim), std::move(coeffs));
    return true;
}

} // namespace detail

/// Versioned length-prefixed binary store of built operators, one file
/// per (spec hash, object id) key.  Corrupt or stale files read as
/// misses and are rebuilt by the caller.
class OperatorCache {
public:
    explicit OperatorCache(std::string dir)
        : dir_(std::move(dir))
    {
        std::filesystem::create_directories(dir_);
    }

    int hits() const { return hits_; }
    int misses() const { return misses_; }

    template <class Writer>
    void store(const std::string& key, std::uint32_t kind, Writer&& writer)
    {
        std::ofstream out(path(key), std::ios::binary | std::ios::trunc);
        out.write("SVCH", 4);
        detail::put_u64(out, cache_format_version);
        detail::put_u64(out, kind);
        writer(out);
    }

    template <class Reader>
    bool load(const std::string& key, std::uint32_t kind, Reader&& reader)
    {
        std::ifstream in(path(key), std::ios::binary);
        char magic[4] = {};
        std::uint64_t version = 0, stored_kind = 0;
        const bool ok = in && in.read(magic, 4) && std::string(magic, 4) == "SVCH" &&
                        detail::get_u64(in, version) && version == cache_format_version &&
                        detail::get_u64(in, stored_kind) && stored_kind == kind && reader(in);
        ok ? ++hits_ : ++misses_;
        return ok;
    }

    void store_matrix(const std::string& key, const Matrix<Rational>& m)
    {
        store(key, 1, [&](std::ostream& out) { detail::put_matrix(out, m); });
    }

    bool load_matrix(const std::string& key, Matrix<Rational>& m)
    {
        return load(key, 1, [&](std::istream& in) { return detail::get_matrix(in, m); });
    }

    void store_oppoly(const std::string& key, const OpPoly<Rational>& p)
    {
        store(key, 2, [&](std::ostream& out) { detail::put_oppoly(out, p); });
    }

    bool load_oppoly(const std::string& key, OpPoly<Rational>& p)
    {
        return load(key, 2, [&](std::istream& in) { return detail::get_oppoly(in, p); });
    }

    void store_oppoly_list(const std::string& key, const std::vector<OpPoly<Rational>>& ps)
    {
        store(key, 3, [&](std::ostream& out) {
            detail::put_u64(out, ps.size());
            for (const auto& p : ps) detail::put_oppoly(out, p);
        });
    }

    bool load_oppoly_list(const std::string& key, std::vector<OpPoly<Rational>>& ps)
    {
        return load(key, 3, [&](std::istream& in) {
            std::uint64_t n = 0;
            if (!detail::get_u64(in, n)) return false;
            std::vector<OpPoly<Rational>> out;
            for (std::uint64_t k = 0; k < n; ++k) {
                OpPoly<Rational> p(1);
                if (!detail::get_oppoly(in, p)) return false;
                out.push_back(std::move(p));
            }
            ps = std::move(out);
            return true;
        });
    }

private:
    std::string path(const std::string& key) const { return dir_ + "/" + key + ".bin"; }

    std::string dir_;
    int hits_ = 0;
    int misses_ = 0;
};

} // namespace sovchain
