#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace aptuple {

// Tuple pattern H = {h_1 < ... < h_m}, normalized so that h_1 = 0.
class Pattern {
public:
    // Sorts, removes duplicates and translates so the minimum is 0.
    // Throws argument_error on an empty list.
    explicit Pattern(std::vector<int64_t> offsets);

    // "0,2,6"
    static Pattern parse(std::string_view text);

    std::size_t size() const noexcept { return offsets_.size(); }
    std::span<const uint64_t> offsets() const noexcept { return offsets_; }
    uint64_t operator[](std::size_t i) const noexcept { return offsets_[i]; }
    uint64_t max_offset() const noexcept { return offsets_.back(); }

    // True when every offset is even (the subclass used with odd n).
    bool all_even() const noexcept;

    std::string to_string() const;

    friend bool operator==(const Pattern&, const Pattern&) = default;

private:
    std::vector<uint64_t> offsets_;
};

// Factor-count demands K = (k_1, ..., k_m), every k_i >= 1.
class Requirements {
public:
    explicit Requirements(std::vector<unsigned> demands);

    // "1,1,2"
    static Requirements parse(std::string_view text);

    std::size_t size() const noexcept { return demands_.size(); }
    std::span<const unsigned> demands() const noexcept { return demands_; }
    unsigned operator[](std::size_t i) const noexcept { return demands_[i]; }
    bool all_ones() const noexcept;

    std::string to_string() const;

    friend bool operator==(const Requirements&, const Requirements&) = default;

private:
    std::vector<unsigned> demands_;
};

struct ResidueCoverage {
    std::vector<uint64_t> residues;  // {-h_i mod p}, ascending
    uint64_t nu = 0;                 // residues.size()
};

// Throws argument_error when p is not prime.
ResidueCoverage residues_mod_p(const Pattern& pattern, uint64_t p);

// Number of distinct residues h_i mod p. No primality check; p >= 1.
uint64_t nu_mod_p(const Pattern& pattern, uint64_t p);

struct AdmissibilityVerdict {
    bool admissible = true;
    // Every prime p <= m with nu_p = p, ascending; witness is the largest.
    std::vector<uint64_t> witnesses;
    std::optional<uint64_t> witness;
    std::map<uint64_t, uint64_t> nu_values;    // p -> nu_p for every prime p <= m
};

// Only primes p <= m can be covered, so only those are examined.
AdmissibilityVerdict is_admissible(const Pattern& pattern);

// {c*h_1, ..., c*h_m}; argument_error on c = 0 or overflow.
Pattern scale_pattern(const Pattern& pattern, uint64_t c);

// Primes dividing gcd(h_2, ..., h_m). argument_error when m = 1.
std::vector<uint64_t> distance_gcd_prime_support(const Pattern& pattern);

// True when every prime factor of c divides every offset of the pattern,
// which is exactly when scaling by c keeps the Selberg constant.
bool scaling_keeps_support(const Pattern& pattern, uint64_t c);

// Product of the first i primes; argument_error for i = 0 or overflow.
uint64_t primorial(unsigned i);

}  // namespace aptuple
