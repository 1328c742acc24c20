#pragma once

// Finitely presented modules A^r / span(relations), morphisms between them,
// and the kernel / image / cokernel calculus.

#include "adicomp/groebner.hpp"
#include "adicomp/matrix.hpp"
#include "adicomp/snf.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace adicomp {

struct StdBasisOptions {
  /// Also compute syzygies and the data needed for membership witnesses.
  bool track = true;
};

/// Canonical basis of a submodule of A^rank. Quotient rings are handled by
/// lifting to the ambient polynomial ring and adding J * A^rank.
struct StdBasis {
  RingSpec ring;
  std::size_t rank = 0;
  std::vector<FreeVec> input;
  /// Reduced strong Gröbner basis, pushed into ring (zero entries dropped).
  std::vector<FreeVec> generators;
  /// Generators of the relations among input, each of length input.size().
  std::vector<FreeVec> syzygies;
  bool tracked = false;

  // Ambient-level data.
  std::vector<MPoly> gb;
  std::vector<MPoly> ext;         // extended basis, non-Euclidean tracked case
  std::optional<SmithForm> snf;   // Euclidean tracked case
  std::size_t ncols = 0;          // input plus ideal pads
};

StdBasis std_basis(const std::vector<FreeVec> &gens, const RingSpec &ring,
                   std::size_t rank, StdBasisOptions opts = {});

/// Normal form of v modulo the submodule (canonical representative).
FreeVec normal_form(const FreeVec &v, const StdBasis &sub);
bool contains(const StdBasis &sub, const FreeVec &v);
/// Equality of the spanned submodules.
bool same_span(const StdBasis &a, const StdBasis &b);

struct Membership {
  bool member = false;
  /// Coefficients c with v = sum c_i * input_i (modulo the ring's ideal).
  std::vector<RingElem> coefficients;
};

Membership membership(const FreeVec &v, const StdBasis &sub);

class FPModule {
public:
  FPModule(RingSpec ring, std::size_t rank, std::vector<FreeVec> relations = {});

  static FPModule free(const RingSpec &ring, std::size_t rank);
  static FPModule zero(const RingSpec &ring);
  /// A / (ideal).
  static FPModule cyclic(const RingSpec &ring, const std::vector<RingElem> &ideal);

  [[nodiscard]] const RingSpec &ring() const { return ring_; }
  [[nodiscard]] std::size_t rank() const { return rank_; }
  [[nodiscard]] const std::vector<FreeVec> &relations() const { return relations_; }
  /// Basis of the relation span (lazily computed, shared between copies).
  [[nodiscard]] const StdBasis &basis() const;

  [[nodiscard]] bool is_zero() const;
  [[nodiscard]] bool is_zero_elem(const FreeVec &v) const;
  [[nodiscard]] FreeVec reduce(const FreeVec &v) const;
  [[nodiscard]] std::string str() const;

private:
  struct Cache;
  RingSpec ring_;
  std::size_t rank_;
  std::vector<FreeVec> relations_;
  std::shared_ptr<Cache> cache_;
};

bool module_is_zero(const FPModule &M);

class ModuleHom {
public:
  /// Throws IllDefined when check is set and a source relation does not map
  /// into the target relation span.
  ModuleHom(FPModule source, FPModule target, Matrix matrix, bool check = true);

  static ModuleHom identity(const FPModule &M);
  static ModuleHom zero(const FPModule &source, const FPModule &target);
  /// Multiplication by a scalar on M.
  static ModuleHom scalar(const FPModule &M, const RingElem &a);

  [[nodiscard]] const FPModule &source() const { return source_; }
  [[nodiscard]] const FPModule &target() const { return target_; }
  [[nodiscard]] const Matrix &matrix() const { return matrix_; }
  [[nodiscard]] FreeVec apply(const FreeVec &v) const { return matrix_.apply(v); }
  [[nodiscard]] bool is_zero() const;

private:
  FPModule source_;
  FPModule target_;
  Matrix matrix_;
};

/// g after f.
ModuleHom compose(const ModuleHom &g, const ModuleHom &f);
/// f - g as maps (same source and target).
bool equal_maps(const ModuleHom &f, const ModuleHom &g);

struct Kernel {
  FPModule module;
  ModuleHom inclusion;
};

Kernel kernel_hom(const ModuleHom &f);

struct ImageCoker {
  FPModule image;
  FPModule cokernel;
  ModuleHom projection;      // target -> cokernel
  ModuleHom image_inclusion; // image -> target
};

ImageCoker image_coker(const ModuleHom &f);

bool is_injective(const ModuleHom &f);
bool is_surjective(const ModuleHom &f);
bool is_isomorphism(const ModuleHom &f);

/// Submodule of M given by generators in M's ambient free module.
struct Submodule {
  std::vector<FreeVec> generators;
  FPModule module;   // the submodule as a module
  FPModule quotient; // M / submodule
};

/// Submodule of M generated by gens, with its presentation and quotient.
Submodule submodule(const FPModule &M, const std::vector<FreeVec> &gens);

/// The chain a^j M + R inside A^r.
struct PowerChain {
  /// levels[j] spans a^j A^r + R; the vector stops one past the
  /// stabilization point when stop_when_stable was requested.
  std::vector<StdBasis> levels;
  std::optional<int> stabilized_at; // least j with a^j M = a^{j+1} M
  [[nodiscard]] const StdBasis &level(std::size_t j) const;
};

PowerChain power_chain(const FPModule &M, const std::vector<RingElem> &a,
                       int depth, bool stop_when_stable = true);

struct PowerAct {
  Submodule power;
  std::optional<int> stabilized_at;
};

/// a^k M as a submodule of M, and M / a^k M. Throws BudgetExceeded when k
/// exceeds budget.
PowerAct ideal_power_act(const std::vector<RingElem> &a, int k,
                         const FPModule &M, int budget = 16);

/// Degrees for the generators making every relation homogeneous, when the
/// ring is graded and such an assignment exists.
std::optional<std::vector<int>> generator_degrees(const FPModule &M);

/// Whether M[1/a] = 0, i.e. a acts nilpotently on M.
bool localization_vanishes(const FPModule &M, const RingElem &a);

/// Invariant factors of M over a ring that is Euclidean after lifting:
/// nonunit nonzero diagonal entries (in the ambient ring) and free rank.
struct EuclideanStructure {
  std::vector<RingElem> torsion;   // ambient elements
  std::vector<FreeVec> torsion_generators; // in M's ambient coordinates
  std::vector<FreeVec> free_generators;
  std::size_t free_rank = 0;
};

EuclideanStructure euclidean_structure(const FPModule &M);

/// Direct sum with the obvious block presentation.
FPModule direct_sum(const std::vector<FPModule> &parts);

} // namespace adicomp
