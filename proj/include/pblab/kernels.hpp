#pragma once

#include <functional>
#include <vector>

#include "pblab/fockrep.hpp"

namespace pblab {

// Serial is the reference path; Parallel must agree with it bit for bit.
enum class Exec { Serial, Parallel };

// Caps OpenMP threads; n <= 0 restores the runtime default.
void set_thread_cap(int n);
int thread_cap();
// Reads PBLAB_THREADS when set.
void apply_thread_env();

Exec default_exec();
void set_default_exec(Exec e);

// G[n,m] = sum_k conj(U[k,n]) V[k,m], each entry accumulated in index order.
CMat overlap_matrix(const CMat& U, const CMat& V, Exec ex = default_exec());

// G[n,m] = f(n,m) for n < rows, m < cols.
CMat tabulate(int rows, int cols, const std::function<CNum(int, int)>& f, Exec ex = default_exec());

// Values f(i) for i < count, then summed in index order.
CNum ordered_sum(int count, const std::function<CNum(int)>& f, Exec ex = default_exec());
std::vector<CNum> evaluate_all(int count, const std::function<CNum(int)>& f, Exec ex = default_exec());

// Count of indices i < count with pred(i) true, plus the first such index (or -1).
struct CountResult {
    long count = 0;
    long first = -1;
};
CountResult count_if_index(long count, const std::function<bool(long)>& pred, Exec ex = default_exec());

}  // namespace pblab
