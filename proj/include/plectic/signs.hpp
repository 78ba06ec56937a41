#pragma once

#include <vector>

namespace plectic {

/// A permutation of {0..m-1} given as the image list: output slot a holds
/// element perm[a].  Graded sign bookkeeping takes the homological degrees
/// of the elements being permuted.
using Perm = std::vector<int>;

/// (-1)^{inversions}.
int perm_sign(const Perm& p);

/// Koszul sign for reordering x_0..x_{m-1} into x_{p[0]},..,x_{p[m-1]}:
/// each transposition of adjacent elements a,b contributes (-1)^{deg a * deg b}.
/// Independent of the decomposition into adjacent swaps.
int koszul_sign(const Perm& p, const std::vector<int>& degrees);

/// chi = perm_sign * koszul_sign.
int chi_sign(const Perm& p, const std::vector<int>& degrees);

/// All (k,l)-unshuffles of {0..k+l-1}: permutations increasing on the first k
/// and on the last l output slots.  Count = binomial(k+l, k).
std::vector<Perm> unshuffles(int k, int l);

long binomial(int n, int k);

} // namespace plectic
