#include <dsslp/entset.hpp>

#include <algorithm>
#include <stdexcept>

namespace dsslp {

VarSet VarSet::full(int nvars) {
    if (nvars < 0 || nvars > 64) throw std::length_error("variable count out of range");
    if (nvars == 64) return VarSet(~std::uint64_t{0});
    return VarSet((std::uint64_t{1} << nvars) - 1);
}

std::vector<int> set_positions(VarSet s) {
    std::vector<int> out;
    for (int p = 0; p < 64; ++p)
        if (s.contains(p)) out.push_back(p);
    return out;
}

std::string set_display(VarSet s, const Universe& u) {
    std::string out = "{";
    bool first = true;
    for (int p : set_positions(s)) {
        if (!first) out += ",";
        out += var_name(u.var(p), u.params);
        first = false;
    }
    return out + "}";
}

std::vector<VarSet> subset_lattice(int nvars) {
    if (nvars < 1) throw std::invalid_argument("empty universe");
    if (nvars > max_scan_positions) throw std::length_error("universe too large for exhaustive scan");
    std::uint64_t total = std::uint64_t{1} << nvars;
    std::vector<VarSet> out;
    out.reserve(total - 1);
    for (std::uint64_t m = 1; m < total; ++m) out.push_back(VarSet(m));
    return out;
}

std::string row_tag_name(RowTag tag) {
    switch (tag) {
        case RowTag::elemental_h: return "elemental-H";
        case RowTag::elemental_i: return "elemental-I";
        case RowTag::storage_enc: return "storage-enc";
        case RowTag::storage_cap: return "storage-cap";
        case RowTag::repair_enc: return "repair-enc";
        case RowTag::repair_cap: return "repair-cap";
        case RowTag::repair_dec: return "repair-dec";
        case RowTag::reconstruct: return "reconstruct";
        case RowTag::rate: return "rate";
    }
    throw std::logic_error("unreachable");
}

void LinearConstraint::add_term(ColKey key, const Rational& coeff) {
    if (coeff == 0) return;
    auto it = std::lower_bound(terms.begin(), terms.end(), key,
                               [](const auto& t, ColKey k) { return t.first < k; });
    if (it != terms.end() && it->first == key) {
        it->second += coeff;
        if (it->second == 0) terms.erase(it);
    } else {
        terms.insert(it, {key, coeff});
    }
}

const Rational* LinearConstraint::coeff(ColKey key) const {
    auto it = std::lower_bound(terms.begin(), terms.end(), key,
                               [](const auto& t, ColKey k) { return t.first < k; });
    if (it != terms.end() && it->first == key) return &it->second;
    return nullptr;
}

void LinearConstraint::canonicalize() {
    if (terms.empty() && rhs == 0) return;
    mpz_class lcm = 1;
    for (const auto& [key, c] : terms) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), rhs.get_den().get_mpz_t());
    mpz_class gcd = 0;
    for (auto& [key, c] : terms) {
        c *= lcm;
        c.canonicalize();
        mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), c.get_num().get_mpz_t());
    }
    rhs *= lcm;
    rhs.canonicalize();
    mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), rhs.get_num().get_mpz_t());
    if (gcd > 1) {
        for (auto& [key, c] : terms) {
            c /= gcd;
            c.canonicalize();
        }
        rhs /= gcd;
        rhs.canonicalize();
    }
    if (rel == Relation::eq && !terms.empty() && terms.front().second < 0) {
        for (auto& [key, c] : terms) c = -c;
        rhs = -rhs;
    }
}

std::string LinearConstraint::dedup_key() const {
    bool mirror = rel == Relation::le;
    std::string out;
    out += rel == Relation::eq ? '=' : '>';
    for (const auto& [key, c] : terms) {
        out += std::to_string(key);
        out += ':';
        out += (mirror ? Rational(-c) : c).get_str();
        out += ';';
    }
    out += '|';
    out += (mirror ? Rational(-rhs) : rhs).get_str();
    return out;
}

namespace {

// Spreads bits of x upward so position `pos` becomes a hole.
std::uint64_t skip_bit(std::uint64_t x, int pos) {
    std::uint64_t below = (std::uint64_t{1} << pos) - 1;
    return ((x & ~below) << 1) | (x & below);
}

}  // namespace

std::vector<LinearConstraint> elemental_inequalities(int nvars) {
    if (nvars < 1) throw std::invalid_argument("empty universe");
    if (nvars > 14) throw std::length_error("too many variables to materialize elemental rows");
    std::vector<LinearConstraint> rows;
    rows.reserve(elemental_count(nvars));
    VarSet full = VarSet::full(nvars);
    for (int i = 0; i < nvars; ++i) {
        LinearConstraint row;
        row.tag = RowTag::elemental_h;
        row.rel = Relation::ge;
        row.add_term(entropy_col(full), 1);
        if (nvars > 1) row.add_term(entropy_col(full.without(i)), -1);
        row.canonicalize();
        rows.push_back(std::move(row));
    }
    for (int a = 0; a < nvars; ++a) {
        for (int b = a + 1; b < nvars; ++b) {
            std::uint64_t patterns = std::uint64_t{1} << (nvars - 2);
            for (std::uint64_t m = 0; m < patterns; ++m) {
                VarSet c(skip_bit(skip_bit(m, a), b));
                VarSet ac = c.with(a);
                VarSet bc = c.with(b);
                VarSet abc = ac.with(b);
                LinearConstraint row;
                row.tag = RowTag::elemental_i;
                row.rel = Relation::ge;
                row.add_term(entropy_col(ac), 1);
                row.add_term(entropy_col(bc), 1);
                row.add_term(entropy_col(abc), -1);
                if (!c.empty()) row.add_term(entropy_col(c), -1);
                row.canonicalize();
                rows.push_back(std::move(row));
            }
        }
    }
    return rows;
}

std::vector<LinearConstraint> elemental_inequalities(const Universe& u) {
    return elemental_inequalities(u.size());
}

std::size_t elemental_count(int nvars) {
    if (nvars < 1) throw std::invalid_argument("empty universe");
    std::size_t n = static_cast<std::size_t>(nvars);
    if (n < 2) return n;
    return n + (n * (n - 1) / 2) * (std::size_t{1} << (n - 2));
}

}  // namespace dsslp
