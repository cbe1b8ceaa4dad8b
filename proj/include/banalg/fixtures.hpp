#pragma once

// Random instance families for the verification harness. Every generator is
// a pure function of (family, index, seed); index 0 of each family is a fixed
// hand-checkable micro instance.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "banalg/algebra.hpp"
#include "banalg/constructions.hpp"

namespace banalg::fixtures {

enum class Family { diagonal, group, lau, semidirect, radical };

inline constexpr Family kAllFamilies[] = {Family::diagonal, Family::group, Family::lau, Family::semidirect,
                                          Family::radical};

std::string_view to_string(Family family);
std::optional<Family> family_from_string(std::string_view name);

struct Fixture {
  std::string name;  // "<family>-<index>", index zero-padded
  Family family = Family::diagonal;
  Algebra algebra;
  std::optional<ProductDescriptor> desc;
  std::vector<int> orders;  // group family
  bool semisimple = true;
  bool span_condition = false;  // <IB> = I for semidirect descriptors
  bool phi_surjective = false;
};

/// Portable generator: the same (seed, stream) gives the same draws on every platform.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream_a, std::uint64_t stream_b = 0, std::uint64_t stream_c = 0);
  std::uint64_t next() { return engine_(); }
  double uniform();                         // [0, 1)
  double uniform(double lo, double hi);
  std::size_t below(std::size_t n);         // [0, n)
  Complex complex_unit_box();               // re, im uniform in [-1, 1]

 private:
  std::mt19937_64 engine_;
};

/// Size cap on the product dimension (desk scale, at most 16).
inline constexpr std::size_t kDefaultMaxDim = 7;

Fixture make_fixture(Family family, std::size_t index, std::uint64_t seed, std::size_t max_dim = kDefaultMaxDim);
std::vector<Fixture> fixture_generators(Family family, std::uint64_t seed, std::size_t count,
                                        std::size_t max_dim = kDefaultMaxDim);

/// C^n with pointwise product, expressed in the basis given by the columns of
/// `basis` (coordinates in the idempotent basis), with the given weights
/// scaled up until submultiplicative.
Algebra diagonal_algebra(const CMatrix& basis, std::vector<double> weights, const std::string& name);

/// Smallest s >= 1 so that multiplying all weights of B, I by s makes the
/// assembled semidirect product submultiplicative.
double semidirect_weight_scale(const AlgebraSpec& b, const AlgebraSpec& i, const ActionTensors& actions);

}  // namespace banalg::fixtures
