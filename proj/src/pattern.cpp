#include "aptuple/pattern.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <numeric>

#include "aptuple/errors.hpp"
#include "aptuple/primes.hpp"

namespace aptuple {

namespace {

template <typename T>
std::vector<T> parse_list(std::string_view text, const char* what) {
    std::vector<T> out;
    if (text.empty())
        throw argument_error(std::string(what) + ": empty list");
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string_view::npos)
            comma = text.size();
        std::string_view item = text.substr(pos, comma - pos);
        while (!item.empty() && item.front() == ' ')
            item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ')
            item.remove_suffix(1);
        T value{};
        auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
        if (item.empty() || ec != std::errc() || end != item.data() + item.size())
            throw argument_error(std::string(what) + ": malformed entry '" + std::string(item) + "'");
        out.push_back(value);
        pos = comma + 1;
    }
    return out;
}

template <typename Range>
std::string join(const Range& values) {
    std::string s;
    for (auto v : values) {
        if (!s.empty())
            s += ',';
        s += std::to_string(v);
    }
    return s;
}

}  // namespace

Pattern::Pattern(std::vector<int64_t> offsets) {
    if (offsets.empty())
        throw argument_error("pattern: needs at least one offset");
    std::sort(offsets.begin(), offsets.end());
    offsets.erase(std::unique(offsets.begin(), offsets.end()), offsets.end());
    const int64_t base = offsets.front();
    offsets_.reserve(offsets.size());
    for (int64_t h : offsets)
        offsets_.push_back(static_cast<uint64_t>(h) - static_cast<uint64_t>(base));
}

Pattern Pattern::parse(std::string_view text) {
    return Pattern(parse_list<int64_t>(text, "pattern"));
}

bool Pattern::all_even() const noexcept {
    return std::all_of(offsets_.begin(), offsets_.end(), [](uint64_t h) { return h % 2 == 0; });
}

std::string Pattern::to_string() const { return join(offsets_); }

Requirements::Requirements(std::vector<unsigned> demands) : demands_(std::move(demands)) {
    if (demands_.empty())
        throw argument_error("requirements: needs at least one entry");
    for (unsigned k : demands_)
        if (k < 1)
            throw argument_error("requirements: every k_i must be >= 1");
}

Requirements Requirements::parse(std::string_view text) {
    return Requirements(parse_list<unsigned>(text, "requirements"));
}

bool Requirements::all_ones() const noexcept {
    return std::all_of(demands_.begin(), demands_.end(), [](unsigned k) { return k == 1; });
}

std::string Requirements::to_string() const { return join(demands_); }

ResidueCoverage residues_mod_p(const Pattern& pattern, uint64_t p) {
    if (!is_prime(p))
        throw argument_error("residues_mod_p: " + std::to_string(p) + " is not prime");
    ResidueCoverage cover;
    cover.residues.reserve(pattern.size());
    for (uint64_t h : pattern.offsets())
        cover.residues.push_back((p - h % p) % p);
    std::sort(cover.residues.begin(), cover.residues.end());
    cover.residues.erase(std::unique(cover.residues.begin(), cover.residues.end()),
                         cover.residues.end());
    cover.nu = cover.residues.size();
    return cover;
}

uint64_t nu_mod_p(const Pattern& pattern, uint64_t p) {
    const auto offsets = pattern.offsets();
    if (p > pattern.max_offset())
        return offsets.size();
    uint64_t small[16];
    std::vector<uint64_t> large;
    uint64_t* r = small;
    if (offsets.size() > 16) {
        large.resize(offsets.size());
        r = large.data();
    }
    for (std::size_t i = 0; i < offsets.size(); ++i)
        r[i] = offsets[i] % p;
    std::sort(r, r + offsets.size());
    return static_cast<uint64_t>(std::unique(r, r + offsets.size()) - r);
}

AdmissibilityVerdict is_admissible(const Pattern& pattern) {
    AdmissibilityVerdict verdict;
    for (uint32_t p : primes_up_to(pattern.size())) {
        const uint64_t nu = nu_mod_p(pattern, p);
        verdict.nu_values[p] = nu;
        if (nu == p) {
            verdict.admissible = false;
            verdict.witnesses.push_back(p);
            verdict.witness = p;
        }
    }
    return verdict;
}

Pattern scale_pattern(const Pattern& pattern, uint64_t c) {
    if (c == 0)
        throw argument_error("scale_pattern: factor must be >= 1");
    constexpr auto max = static_cast<uint64_t>(std::numeric_limits<int64_t>::max());
    if (pattern.max_offset() > max / c)
        throw argument_error("scale_pattern: " + std::to_string(c) + " * " +
                             std::to_string(pattern.max_offset()) + " overflows");
    std::vector<int64_t> scaled;
    scaled.reserve(pattern.size());
    for (uint64_t h : pattern.offsets())
        scaled.push_back(static_cast<int64_t>(h * c));
    return Pattern(std::move(scaled));
}

std::vector<uint64_t> distance_gcd_prime_support(const Pattern& pattern) {
    if (pattern.size() < 2)
        throw argument_error("distance_gcd_prime_support: pattern needs two or more offsets");
    uint64_t g = 0;
    for (uint64_t h : pattern.offsets())
        g = std::gcd(g, h);
    return prime_factors(g);
}

bool scaling_keeps_support(const Pattern& pattern, uint64_t c) {
    if (c == 0)
        return false;
    if (pattern.size() < 2)
        return true;
    uint64_t g = 0;
    for (uint64_t h : pattern.offsets())
        g = std::gcd(g, h);
    for (uint64_t p : prime_factors(c))
        if (g % p != 0)
            return false;
    return true;
}

uint64_t primorial(unsigned i) {
    if (i == 0)
        throw argument_error("primorial: index must be >= 1");
    uint64_t product = 1;
    unsigned found = 0;
    for (uint64_t p = 2; found < i; ++p) {
        if (!is_prime(p))
            continue;
        if (product > std::numeric_limits<uint64_t>::max() / p)
            throw argument_error("primorial: index " + std::to_string(i) + " overflows 64 bits");
        product *= p;
        ++found;
    }
    return product;
}

}  // namespace aptuple
