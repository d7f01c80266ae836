#include "pblab/kernels.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace pblab {

namespace {
int g_cap = 0;
Exec g_exec = Exec::Parallel;

int threads() { return g_cap > 0 ? g_cap : omp_get_max_threads(); }
}  // namespace

void set_thread_cap(int n) { g_cap = n > 0 ? n : 0; }
int thread_cap() { return threads(); }

void apply_thread_env() {
    if (const char* s = std::getenv("PBLAB_THREADS")) {
        try {
            set_thread_cap(std::stoi(s));
        } catch (const std::exception&) {
            set_thread_cap(0);
        }
    }
}

Exec default_exec() { return g_exec; }
void set_default_exec(Exec e) { g_exec = e; }

CMat overlap_matrix(const CMat& U, const CMat& V, Exec ex) {
    if (U.rows() != V.rows()) throw DimensionError("overlap_matrix: row count mismatch");
    const long rows = U.rows();
    const long nu = U.cols(), nv = V.cols();
    CMat G(nu, nv);
    auto entry = [&](long n, long m) {
        CNum acc = 0;
        const CNum* u = U.col(n).data();
        const CNum* v = V.col(m).data();
        for (long k = 0; k < rows; ++k) acc += std::conj(u[k]) * v[k];
        return acc;
    };
    if (ex == Exec::Serial) {
        for (long m = 0; m < nv; ++m)
            for (long n = 0; n < nu; ++n) G(n, m) = entry(n, m);
    } else {
#pragma omp parallel for collapse(2) schedule(static) num_threads(threads())
        for (long m = 0; m < nv; ++m)
            for (long n = 0; n < nu; ++n) G(n, m) = entry(n, m);
    }
    return G;
}

CMat tabulate(int rows, int cols, const std::function<CNum(int, int)>& f, Exec ex) {
    CMat G(rows, cols);
    if (ex == Exec::Serial) {
        for (int m = 0; m < cols; ++m)
            for (int n = 0; n < rows; ++n) G(n, m) = f(n, m);
        return G;
    }
    // Exceptions must not cross the parallel region; rethrow the first one afterwards.
    std::exception_ptr err;
#pragma omp parallel for collapse(2) schedule(dynamic) num_threads(threads())
    for (int m = 0; m < cols; ++m)
        for (int n = 0; n < rows; ++n) {
            try {
                G(n, m) = f(n, m);
            } catch (...) {
#pragma omp critical(pblab_tabulate_err)
                if (!err) err = std::current_exception();
            }
        }
    if (err) std::rethrow_exception(err);
    return G;
}

std::vector<CNum> evaluate_all(int count, const std::function<CNum(int)>& f, Exec ex) {
    std::vector<CNum> vals(count);
    if (ex == Exec::Serial) {
        for (int i = 0; i < count; ++i) vals[i] = f(i);
        return vals;
    }
    std::exception_ptr err;
#pragma omp parallel for schedule(dynamic) num_threads(threads())
    for (int i = 0; i < count; ++i) {
        try {
            vals[i] = f(i);
        } catch (...) {
#pragma omp critical(pblab_eval_err)
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
    return vals;
}

CNum ordered_sum(int count, const std::function<CNum(int)>& f, Exec ex) {
    auto vals = evaluate_all(count, f, ex);
    CNum acc = 0;
    for (const auto& v : vals) acc += v;
    return acc;
}

CountResult count_if_index(long count, const std::function<bool(long)>& pred, Exec ex) {
    std::vector<char> hit(count, 0);
    if (ex == Exec::Serial) {
        for (long i = 0; i < count; ++i) hit[i] = pred(i) ? 1 : 0;
    } else {
#pragma omp parallel for schedule(static) num_threads(threads())
        for (long i = 0; i < count; ++i) hit[i] = pred(i) ? 1 : 0;
    }
    CountResult r;
    for (long i = 0; i < count; ++i)
        if (hit[i]) {
            if (r.first < 0) r.first = i;
            ++r.count;
        }
    return r;
}

}  // namespace pblab
