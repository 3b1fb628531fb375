#ifndef JETVAR_MULTIINDEX_HPP
#define JETVAR_MULTIINDEX_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include <jetvar/errors.hpp>

namespace jetvar
{

// Derivative counts per base direction. The ordering is graded-lexicographic:
// lower total degree first; within a degree, the index with the larger
// leading entry comes first, so (1,0) < (0,1).
class MultiIndex
{
public:
    MultiIndex() = default;
    explicit MultiIndex(std::size_t n) : entries_(n, 0) {}
    MultiIndex(std::initializer_list<std::uint32_t> entries) : entries_(entries) {}
    explicit MultiIndex(std::vector<std::uint32_t> entries) : entries_(std::move(entries)) {}

    static MultiIndex unit(std::size_t n, std::size_t direction);

    std::size_t size() const noexcept { return entries_.size(); }
    std::uint32_t operator[](std::size_t i) const { return entries_[i]; }
    const std::vector<std::uint32_t> &entries() const noexcept { return entries_; }

    std::uint32_t degree() const noexcept;
    bool is_zero() const noexcept { return degree() == 0; }

    // p + lambda. Throws index_error if the direction is out of range.
    MultiIndex add_direction(std::size_t direction) const;
    // p - lambda; throws index_error if the direction is out of range or p_lambda == 0.
    MultiIndex remove_direction(std::size_t direction) const;

    MultiIndex operator+(const MultiIndex &other) const;
    MultiIndex operator-(const MultiIndex &other) const;

    // Component-wise p <= q.
    bool divides(const MultiIndex &other) const;

    bool operator==(const MultiIndex &) const = default;
    std::strong_ordering operator<=>(const MultiIndex &other) const;

private:
    std::vector<std::uint32_t> entries_;
};

// p! = p_1! ... p_n!
mpz_class factorial(const MultiIndex &p);

// (p+q)! / (p! q!)
mpz_class multinomial(const MultiIndex &p, const MultiIndex &q);

// All length-n multi-indices with degree <= k, in graded-lexicographic order.
std::vector<MultiIndex> enumerate_upto(std::size_t n, std::uint32_t k);

// All length-n multi-indices with degree exactly k, in graded-lexicographic order.
std::vector<MultiIndex> enumerate_exact(std::size_t n, std::uint32_t k);

// Ordered pairs (q, t) with q + t = p.
std::vector<std::pair<MultiIndex, MultiIndex>> splittings(const MultiIndex &p);

} // namespace jetvar

#endif
