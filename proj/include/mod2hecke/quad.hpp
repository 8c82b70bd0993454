#ifndef MOD2HECKE_QUAD_HPP
#define MOD2HECKE_QUAD_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "mod2hecke/rational.hpp"

namespace mod2hecke::quad {

enum class Split { splits, inert, ramifies };

std::string_view to_string(Split s);

/// Q(sqrt d) for squarefree d != 0, 1.
struct QuadField {
    std::int64_t d = 0;
    std::int64_t disc = 0;  // d if d = 1 mod 4, else 4d
    bool real = false;

    static QuadField from_d(std::int64_t d);
    /// Q(sqrt(sign * N)).
    static QuadField of_prime(std::uint64_t n, int sign);
};

/// Binary quadratic form a x^2 + b xy + c y^2.
struct QForm {
    std::int64_t a = 0, b = 0, c = 0;

    std::int64_t discriminant() const { return b * b - 4 * a * c; }
    friend bool operator==(const QForm&, const QForm&) = default;
    friend auto operator<=>(const QForm&, const QForm&) = default;
};

/// Principal form of discriminant disc.
QForm principal_form(std::int64_t disc);

/// Definite: |b| <= a <= c, b >= 0 if |b| = a or a = c.
bool is_reduced_definite(const QForm& f);
/// Indefinite: 0 < b < sqrt(D), sqrt(D) - b < 2|a| < sqrt(D) + b.
bool is_reduced_indefinite(const QForm& f);

QForm reduce_definite(QForm f);
/// One step of the indefinite reduction operator rho.
QForm rho(const QForm& f);
QForm reduce_indefinite(QForm f);

/// Composition of primitive forms of equal discriminant (not reduced).
QForm compose(const QForm& f, const QForm& g);

/// Reduced forms of a fundamental discriminant: all reduced forms for D < 0,
/// all reduced indefinite forms for D > 0.
std::vector<QForm> reduced_forms(std::int64_t disc);

/*
 * Ideal class group cl(K) realized on binary quadratic forms. For real
 * fields the elements are cycles of reduced forms, merged pairwise with
 * their negatives when the fundamental unit has norm +1 (narrow -> wide).
 */
class ClassGroup {
  public:
    explicit ClassGroup(const QuadField& field);

    std::int64_t discriminant() const { return disc_; }
    std::uint64_t h() const { return elements_.size(); }
    std::uint64_t h_odd() const;
    std::uint64_t h_even() const;
    /// Narrow class number (equal to h for imaginary fields).
    std::uint64_t h_plus() const { return h_plus_; }

    /// One reduced representative per class; index 0 is the principal class.
    const std::vector<QForm>& elements() const { return elements_; }
    /// Invariant factors d_1 | d_2 | ... with product h (empty when h = 1).
    const std::vector<std::uint64_t>& structure() const { return structure_; }

    std::size_t class_of(const QForm& f) const;
    std::size_t compose(std::size_t i, std::size_t j) const;
    std::uint64_t order(std::size_t i) const;

  private:
    std::int64_t disc_;
    bool real_;
    std::uint64_t h_plus_ = 0;
    std::vector<QForm> elements_;
    std::vector<std::uint64_t> structure_;
    std::map<QForm, std::size_t> index_;  // reduced form -> class index
};

/// Fundamental unit x + y*omega, omega = sqrt(d) or (1 + sqrt(d))/2.
struct Unit {
    Integer x, y;
    int norm = 0;
};

Split splitting_of_2(const QuadField& field);
ClassGroup class_group(const QuadField& field);
Unit fundamental_unit(const QuadField& field);
/// Norm of x + y*omega in the field.
Integer unit_norm(const QuadField& field, const Integer& x, const Integer& y);
bool unit_residue_mod2(const QuadField& field);
std::uint64_t ray_class_number_2(const QuadField& field);
std::uint64_t ray_class_number_2(const QuadField& field, const ClassGroup& cg);
/// Order of the class of a prime above 2; 1 when 2 is inert.
std::uint64_t p2_order(const QuadField& field);
std::uint64_t p2_order(const QuadField& field, const ClassGroup& cg);
/// Form (2, b, c) representing a prime above 2 (2 split or ramified).
QForm prime_form_2(std::int64_t disc);

struct QuadInvariants {
    QuadField field;
    std::uint64_t h = 0;
    std::uint64_t h_odd = 0;
    std::uint64_t h_even = 0;
    std::vector<std::uint64_t> structure;
    Split split2 = Split::ramifies;
    std::uint64_t ord_p2 = 1;
    std::uint64_t h_odd_2split = 0;
    std::optional<Unit> unit;               // real fields
    std::optional<bool> unit_is_1_mod2;     // real fields with 2 inert
    std::optional<std::uint64_t> h_ray2;    // 2 inert
};

QuadInvariants invariants(std::uint64_t n, int sign);
QuadInvariants invariants_of(const QuadField& field);

}  // namespace mod2hecke::quad

#endif
