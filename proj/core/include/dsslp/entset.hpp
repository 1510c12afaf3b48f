#pragma once

#include <dsslp/model.hpp>
#include <dsslp/rational.hpp>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace dsslp {

// Subset of universe positions as a 64-bit mask; the numeric order on masks
// is the total order used for canonical representatives everywhere.
struct VarSet {
    std::uint64_t bits = 0;

    constexpr VarSet() = default;
    constexpr explicit VarSet(std::uint64_t b) : bits(b) {}

    static constexpr VarSet single(int pos) { return VarSet(std::uint64_t{1} << pos); }
    static VarSet full(int nvars);

    constexpr bool empty() const { return bits == 0; }
    constexpr bool contains(int pos) const { return (bits >> pos) & 1; }
    constexpr bool subset_of(VarSet o) const { return (bits & ~o.bits) == 0; }
    constexpr VarSet with(int pos) const { return VarSet(bits | (std::uint64_t{1} << pos)); }
    constexpr VarSet without(int pos) const { return VarSet(bits & ~(std::uint64_t{1} << pos)); }
    int count() const { return __builtin_popcountll(bits); }

    friend constexpr VarSet operator|(VarSet a, VarSet b) { return VarSet(a.bits | b.bits); }
    friend constexpr VarSet operator&(VarSet a, VarSet b) { return VarSet(a.bits & b.bits); }
    friend constexpr VarSet operator-(VarSet a, VarSet b) { return VarSet(a.bits & ~b.bits); }
    friend constexpr auto operator<=>(VarSet a, VarSet b) { return a.bits <=> b.bits; }
    friend constexpr bool operator==(VarSet a, VarSet b) { return a.bits == b.bits; }
};

std::vector<int> set_positions(VarSet s);
// "{S,Y1,U1[2]}" in universe order.
std::string set_display(VarSet s, const Universe& u);

// All nonempty subsets of nvars positions, ascending. Refuses more than 22
// positions (the exhaustive-scan capacity of this toolkit).
std::vector<VarSet> subset_lattice(int nvars);
constexpr int max_scan_positions = 22;

// LP columns are keyed by the subset mask (entropy of that subset); the two
// capacity parameters get reserved negative keys so they can ride along in
// the same sparse rows.
using ColKey = std::int64_t;
inline constexpr ColKey alpha_col = -1;
inline constexpr ColKey beta_col = -2;
inline ColKey entropy_col(VarSet s) { return static_cast<ColKey>(s.bits); }

enum class Relation { eq, ge, le };

enum class RowTag {
    elemental_h,
    elemental_i,
    storage_enc,
    storage_cap,
    repair_enc,
    repair_cap,
    repair_dec,
    reconstruct,
    rate,
};
std::string row_tag_name(RowTag tag);

// One sparse row: sum of coeff * column {rel} rhs. Terms are kept sorted by
// key with no zero coefficients.
struct LinearConstraint {
    std::vector<std::pair<ColKey, Rational>> terms;
    Relation rel = Relation::ge;
    Rational rhs;
    RowTag tag = RowTag::elemental_h;

    void add_term(ColKey key, const Rational& coeff);
    const Rational* coeff(ColKey key) const;

    // Scales the row to coprime integer coefficients (rhs included); for
    // equalities also flips signs so the first term is positive.
    void canonicalize();

    // Canonical byte string for dedup: le rows compare equal to their ge
    // mirror image. Call canonicalize() first.
    std::string dedup_key() const;
};

// Elemental Shannon inequalities over nvars positions:
//   nvars rows        H(V) - H(V minus {i}) >= 0
//   per pair {a,b}    H(aC) + H(bC) - H(abC) - H(C) >= 0 for C inside the rest
std::vector<LinearConstraint> elemental_inequalities(int nvars);
std::vector<LinearConstraint> elemental_inequalities(const Universe& u);
// nvars + C(nvars,2) * 2^(nvars-2), without enumerating.
std::size_t elemental_count(int nvars);

}  // namespace dsslp
