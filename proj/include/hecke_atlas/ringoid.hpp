#pragma once

#include <functional>
#include <random>
#include <string>

#include "hecke_atlas/kmat.hpp"

namespace atlas {

// A "ring with many objects" over the cyclotomic coefficient field: finite
// object set, finite-dimensional hom spaces with chosen bases, bilinear
// composition given by structure constants, designated identities.
struct Ringoid {
  int nobj = 0;
  std::vector<int> dims;       // hom dims, index x * nobj + y
  std::vector<KMat> comp;      // comp[(x*nobj+y)*nobj+z]: dim(x,z) x (dim(x,y)*dim(y,z))
  std::vector<KMat> id;        // id[x]: dim(x,x) x 1

  int hd(int x, int y) const { return dims[(size_t)x * nobj + y]; }
  const KMat& ctensor(int x, int y, int z) const {
    return comp[((size_t)x * nobj + y) * nobj + z];
  }
  // compose coefficient vectors: u in hom(x,y), v in hom(y,z) -> hom(x,z)
  KMat compose(int x, int y, int z, const KMat& u, const KMat& v) const;
};

// Builders
Ringoid ringoid_blank(int nobj, std::vector<int> dims);
// One-object ringoid from a finite-group multiplication table.
Ringoid group_algebra_ringoid(const std::vector<std::vector<int>>& mult, int id);
// hom(x,y) = Hom(V_x, V_y) when pattern(x,y), else 0; pattern must be
// reflexive where d > 0 and closed under composition.
Ringoid matrix_pattern_ringoid(const std::vector<int>& d,
                               const std::vector<std::vector<char>>& pattern);
// change of basis on every hom space (preserves validity)
Ringoid ringoid_twist(const Ringoid& R, std::mt19937_64& rng);
Ringoid random_ringoid(std::mt19937_64& rng);

struct CheckResult {
  bool ok = true;
  std::string witness;
};
// associativity on all basis triples + identity axioms
CheckResult ringoid_check(const Ringoid& R);

// Left module: covariant linear functor to vector spaces.
struct RModule {
  const Ringoid* R = nullptr;
  std::vector<int> dims;                // per object
  std::vector<std::vector<KMat>> act;   // act[x*nobj+y][k]: dim(y) x dim(x)

  KMat act_of(int x, int y, const KMat& f) const;  // f: hom(x,y) coeff column
};

// Right module: contravariant.
struct RightModule {
  const Ringoid* R = nullptr;
  std::vector<int> dims;
  std::vector<std::vector<KMat>> act;  // act[x*nobj+y][k]: dim(x) x dim(y)

  KMat act_of(int x, int y, const KMat& f) const;
};

bool module_check(const RModule& M);
bool module_check(const RightModule& M);
RModule regular_left(const Ringoid& R, int z);    // y -> hom(z, y)
RightModule regular_right(const Ringoid& R, int z);  // y -> hom(y, z)
RModule zero_module(const Ringoid& R);

// Module over the endomorphism algebra R(x): dimension + action matrices
// per basis element of hom(x,x).
struct EndAlgModule {
  int dim = 0;
  std::vector<KMat> act;
};
EndAlgModule regular_endalg_module(const Ringoid& R, int x);

RModule ind_module(const Ringoid& R, int x, const EndAlgModule& M);
RModule coind_module(const Ringoid& R, int x, const EndAlgModule& M);

// Adjunction triangle identities for (Ind_x -| Res_x) and (Res_x -| Coind_x),
// verified exactly on the given data.
bool check_ind_res_triangles(const Ringoid& R, int x, const EndAlgModule& M,
                             const RModule& N);
bool check_res_coind_triangles(const Ringoid& R, int x, const EndAlgModule& M,
                               const RModule& N);

// (R, R')-bimodule: B(xp, x), covariant in x over R, contravariant in xp
// over R'.
struct RBimodule {
  const Ringoid* R = nullptr;
  const Ringoid* Rp = nullptr;
  std::vector<int> dims;               // dims[xp * R->nobj + x]
  // left action: f in hom_R(x,y): B(xp,x) -> B(xp,y)
  std::vector<std::vector<KMat>> lact;  // [(xp*n + x)*n + y][k]
  // right action: fp in hom_{R'}(yp,xp): B(xp,x) -> B(yp,x)
  std::vector<std::vector<KMat>> ract;  // [(xp*np + yp)*n + x][k]

  int bd(int xp, int x) const { return dims[(size_t)xp * R->nobj + x]; }
  KMat lact_of(int xp, int x, int y, const KMat& f) const;
  KMat ract_of(int xp, int yp, int x, const KMat& fp) const;
};

bool bimodule_check(const RBimodule& B);
// Hom_K(M, N) as an (R, R)-bimodule for left modules M, N.
RBimodule hom_bimodule(const RModule& M, const RModule& N);
// M' (x) N for a right module M' and left module N over the same R.
RBimodule product_bimodule(const RightModule& M, const RModule& N);

// end = ker of the difference of the two structural maps; returns the
// subspace of prod_x B(x,x).
KSubspace end_of(const RBimodule& B);
// coend = coker; quotient of sum_x B(x,x).
KQuotient coend_of(const RBimodule& B);

// dim Hom_R(M, N) by solving the intertwining system directly (the
// independent oracle for end_of(hom_bimodule)).
int hom_space_dim(const RModule& M, const RModule& N);

struct TensorResult {
  KQuotient Q;       // quotient of sum_x M(x) (x) N(x)
  std::vector<int> offset;  // block offsets per object
};
TensorResult tensor_over(const RightModule& M, const RModule& N);

bool is_induced(const RModule& M, int x);
bool is_induced(const RightModule& M, int x);
bool is_coinduced(const RModule& M, int x);
// a*_{y,x} isomorphisms whenever hom(y,x) != 0
bool is_cartesian(const RModule& M);

struct MoritaReport {
  bool induced_left = false;   // x -> B(xp, x) induced from iota xp
  bool induced_right = false;  // yp -> B(yp, iota xp) induced from xp
  bool endalg_morita = false;  // double centralizer + faithfulness
  bool objects_covered = false;
  bool counit_iso = false;
  bool unit_iso = false;
  bool ok() const {
    return induced_left && induced_right && endalg_morita && objects_covered &&
           counit_iso && unit_iso;
  }
};
MoritaReport morita_check(const RBimodule& B, const std::vector<int>& iota);

}  // namespace atlas
