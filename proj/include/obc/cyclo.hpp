#pragma once

#include "obc/normal.hpp"
#include "obc/polyz.hpp"

#include "json.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace obc {

/**
 * Quotient data for a pair of monic even-gap polynomials
 * u^ell + z[1] u^(ell-2) + ... and u^ell + z'[1] u^(ell-2) + ....
 * The primed coefficients may be left formal. The derived series solve
 * f'(u) = f(u) delta(u^2) and f(u) = -f'(u) delta'(u^2) in powers of 1/u,
 * so delta[0] = 1 and delta_prime[0] = -1.
 */
struct CycloData {
    int ell = 0;
    std::vector<GRat> z;
    bool formal = false;
    std::vector<GRat> zprime;
    std::vector<PolyZ> delta;
    std::vector<PolyZ> delta_prime;

    int half() const { return ell / 2; }
    // z'_r as a polynomial, zero beyond the top index
    PolyZ zprime_coeff(int r) const;
};

CycloData cyclo_data(int ell, const std::vector<GRat>& z, const std::vector<GRat>& zprime,
                     int precision);
CycloData cyclo_data_formal(int ell, const std::vector<GRat>& z, int precision);

// both series recomputed from the stored coefficients, index 0..precision
std::pair<std::vector<PolyZ>, std::vector<PolyZ>> delta_series(const CycloData& data,
                                                               int precision);

struct CycloCheck {
    std::string name;
    bool pass = false;
};

// convolution identities tying the two coefficient lists to the series,
// plus the requirement that the two series multiply to minus one
std::vector<CycloCheck> check_e1_e2(const CycloData& data, int precision);

// counterclockwise bubble generators become series values
PolyZ bubble_specialize(const BubblePoly& p, const CycloData& data);

/** Normal form in the quotient: fewer dots than the degree on every strand. */
struct CycloMorphism {
    Word src;
    Word dst;
    std::map<NormalKey, PolyZ> terms;

    bool is_zero() const { return terms.empty(); }
};

bool operator==(const CycloMorphism& a, const CycloMorphism& b);

void cm_add_term(CycloMorphism& m, const NormalKey& k, const PolyZ& c);
CycloMorphism cm_add(const CycloMorphism& a, const CycloMorphism& b);
CycloMorphism cm_scale(const CycloMorphism& m, const PolyZ& c);
// substitute numeric values for the formal coefficients in every term
CycloMorphism cm_eval(const CycloMorphism& m, const std::vector<GRat>& values);

/**
 * Which substitution rules the reducer may use. Both is the default; the
 * one sided modes confirm that either polynomial alone cuts out the same
 * quotient, bending strands around when the matching end is missing.
 */
enum class CycloRules { Both, UpOnly, DownOnly };

CycloMorphism cyclo_normalize(const NormalMorphism& m, const CycloData& data,
                              CycloRules rules = CycloRules::Both);
CycloMorphism cyclo_normalize(const Expr& e, const CycloData& data,
                              CycloRules rules = CycloRules::Both);

// independent route: bend to endomorphisms of up strands, straighten in the
// presented algebra, and bend back
CycloMorphism cyclo_normalize_transport(const NormalMorphism& m, const CycloData& data);
CycloMorphism cyclo_normalize_transport(const Expr& e, const CycloData& data);

/** Bending maps between a hom space and endomorphisms of a power of up. */
struct HomTransport {
    Word a;
    Word b;
    bool flow_ok = false;
    int rank = 0;

    NormalMorphism to_end(const NormalMorphism& m) const;
    NormalMorphism from_end(const NormalMorphism& m) const;
};

// flow_ok is false when net flow differs, in which case the hom space is zero
HomTransport hom_transport(const Word& a, const Word& b);

// free rank of the quotient hom space over the series ring; bubble monomials
// multiply the count when included, bounded by their total dot weight
long cyclo_dim(const Word& a, const Word& b, const CycloData& data, bool include_bubbles,
               int bubble_dot_cap = -1);

// single polynomial quotient over the plain scalars, realized by leaving the
// second polynomial formal
CycloData obcf_bridge(int ell, const std::vector<GRat>& z, int precision);
std::vector<CycloCheck> obcf_bridge_checks(const CycloData& data,
                                           const std::vector<std::pair<Word, Word>>& samples,
                                           int bubble_dot_cap);

nlohmann::json cyclo_data_to_json(const CycloData& data);

} // namespace obc
