#include <algorithm>
#include <numeric>
#include <string>

#include <jetvar/multiindex.hpp>

namespace jetvar
{

namespace
{

mpz_class fact(std::uint32_t k)
{
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), k);
    return r;
}

void check_same_length(const MultiIndex &a, const MultiIndex &b)
{
    if (a.size() != b.size()) {
        throw dimension_error("multi-index length mismatch: " + std::to_string(a.size()) + " vs "
                              + std::to_string(b.size()));
    }
}

} // namespace

MultiIndex MultiIndex::unit(std::size_t n, std::size_t direction)
{
    return MultiIndex(n).add_direction(direction);
}

std::uint32_t MultiIndex::degree() const noexcept
{
    return std::accumulate(entries_.begin(), entries_.end(), std::uint32_t{0});
}

MultiIndex MultiIndex::add_direction(std::size_t direction) const
{
    if (direction >= entries_.size()) {
        throw index_error("direction " + std::to_string(direction) + " out of range for base dimension "
                          + std::to_string(entries_.size()));
    }
    auto r = *this;
    ++r.entries_[direction];
    return r;
}

MultiIndex MultiIndex::remove_direction(std::size_t direction) const
{
    if (direction >= entries_.size() || entries_[direction] == 0) {
        throw index_error("cannot remove direction " + std::to_string(direction));
    }
    auto r = *this;
    --r.entries_[direction];
    return r;
}

MultiIndex MultiIndex::operator+(const MultiIndex &other) const
{
    check_same_length(*this, other);
    auto r = *this;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        r.entries_[i] += other.entries_[i];
    }
    return r;
}

MultiIndex MultiIndex::operator-(const MultiIndex &other) const
{
    check_same_length(*this, other);
    if (!other.divides(*this)) {
        throw index_error("multi-index difference would be negative");
    }
    auto r = *this;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        r.entries_[i] -= other.entries_[i];
    }
    return r;
}

bool MultiIndex::divides(const MultiIndex &other) const
{
    check_same_length(*this, other);
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i] > other.entries_[i]) {
            return false;
        }
    }
    return true;
}

std::strong_ordering MultiIndex::operator<=>(const MultiIndex &other) const
{
    if (auto c = entries_.size() <=> other.entries_.size(); c != 0) {
        return c;
    }
    if (auto c = degree() <=> other.degree(); c != 0) {
        return c;
    }
    // Larger leading entry sorts first.
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i] != other.entries_[i]) {
            return other.entries_[i] <=> entries_[i];
        }
    }
    return std::strong_ordering::equal;
}

mpz_class factorial(const MultiIndex &p)
{
    mpz_class r = 1;
    for (auto e : p.entries()) {
        r *= fact(e);
    }
    return r;
}

mpz_class multinomial(const MultiIndex &p, const MultiIndex &q)
{
    check_same_length(p, q);
    mpz_class r = factorial(p + q);
    r /= factorial(p);
    r /= factorial(q);
    return r;
}

std::vector<MultiIndex> enumerate_exact(std::size_t n, std::uint32_t k)
{
    std::vector<MultiIndex> out;
    if (n == 0) {
        if (k == 0) {
            out.emplace_back(0);
        }
        return out;
    }
    // Leading entry runs downward so the result is already in canonical order.
    std::vector<std::uint32_t> cur(n, 0);
    auto rec = [&](auto &self, std::size_t pos, std::uint32_t remaining) -> void {
        if (pos + 1 == n) {
            cur[pos] = remaining;
            out.emplace_back(cur);
            return;
        }
        for (std::uint32_t v = remaining + 1; v-- > 0;) {
            cur[pos] = v;
            self(self, pos + 1, remaining - v);
        }
    };
    rec(rec, 0, k);
    return out;
}

std::vector<MultiIndex> enumerate_upto(std::size_t n, std::uint32_t k)
{
    std::vector<MultiIndex> out;
    for (std::uint32_t d = 0; d <= k; ++d) {
        auto level = enumerate_exact(n, d);
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

std::vector<std::pair<MultiIndex, MultiIndex>> splittings(const MultiIndex &p)
{
    std::vector<std::pair<MultiIndex, MultiIndex>> out;
    std::vector<std::uint32_t> q(p.size(), 0);
    auto rec = [&](auto &self, std::size_t pos) -> void {
        if (pos == p.size()) {
            MultiIndex qi(q);
            out.emplace_back(qi, p - qi);
            return;
        }
        for (std::uint32_t v = 0; v <= p[pos]; ++v) {
            q[pos] = v;
            self(self, pos + 1);
        }
    };
    rec(rec, 0);
    return out;
}

} // namespace jetvar
