#include <doctest.h>

#include <atomic>
#include <cstring>
#include <random>

#include "pblab/coherent.hpp"
#include "pblab/kernels.hpp"
#include "pblab/runner.hpp"

using namespace pblab;

namespace {

CMat random_matrix(int r, int c, unsigned seed) {
    std::mt19937_64 g(seed);
    std::normal_distribution<double> n;
    CMat m(r, c);
    for (int j = 0; j < c; ++j)
        for (int i = 0; i < r; ++i) m(i, j) = CNum(n(g), n(g));
    return m;
}

bool bitwise_equal(const CMat& a, const CMat& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() &&
           std::memcmp(a.data(), b.data(), sizeof(CNum) * a.size()) == 0;
}

struct ThreadCap {
    explicit ThreadCap(int n) { set_thread_cap(n); }
    ~ThreadCap() { set_thread_cap(0); }
};

}  // namespace

TEST_CASE("overlap_matrix: parallel equals serial bit for bit") {
    CMat U = random_matrix(200, 37, 1), V = random_matrix(200, 41, 2);
    CMat s = overlap_matrix(U, V, Exec::Serial);
    for (int t : {1, 2, 3, 8}) {
        ThreadCap cap(t);
        CHECK(bitwise_equal(s, overlap_matrix(U, V, Exec::Parallel)));
    }
    CHECK(max_abs(s - U.adjoint() * V) < 1e-12);
    CHECK_THROWS_AS(overlap_matrix(U, random_matrix(10, 3, 3)), DimensionError);
}

TEST_CASE("tabulate, evaluate_all and ordered_sum") {
    auto f = [](int n, int m) { return std::exp(CNum(0.01 * n, -0.02 * m)) / (1.0 + n + m); };
    CMat s = tabulate(30, 17, f, Exec::Serial);
    ThreadCap cap(4);
    CHECK(bitwise_equal(s, tabulate(30, 17, f, Exec::Parallel)));
    auto g = [](int i) { return CNum(1.0 / (i + 1), std::sin(i)); };
    CNum a = ordered_sum(1000, g, Exec::Serial), b = ordered_sum(1000, g, Exec::Parallel);
    CHECK(std::memcmp(&a, &b, sizeof a) == 0);
    auto va = evaluate_all(100, g, Exec::Serial), vb = evaluate_all(100, g, Exec::Parallel);
    CHECK(va == vb);
}

TEST_CASE("count_if_index reports the first hit") {
    auto pred = [](long i) { return i % 7 == 3 && i > 50; };
    auto s = count_if_index(1000, pred, Exec::Serial);
    ThreadCap cap(4);
    auto p = count_if_index(1000, pred, Exec::Parallel);
    CHECK(s.count == p.count);
    CHECK(s.first == 52);
    CHECK(p.first == 52);
    CHECK(count_if_index(10, [](long) { return false; }).first == -1);
}

TEST_CASE("thread caps") {
    set_thread_cap(3);
    CHECK(thread_cap() == 3);
    set_thread_cap(0);
    CHECK(thread_cap() >= 1);
    auto old = default_exec();
    set_default_exec(Exec::Serial);
    CHECK(default_exec() == Exec::Serial);
    set_default_exec(old);
}

TEST_CASE("resolution matrix does not depend on the thread count") {
    auto s = shifted_model(0.5, 0.3, 64);
    CMat V = resolution_test_vectors(64);
    auto old = default_exec();
    set_default_exec(Exec::Serial);
    CMat a = resolution_matrix(s, {}, V, V).T;
    set_default_exec(Exec::Parallel);
    ThreadCap cap(4);
    CMat b = resolution_matrix(s, {}, V, V).T;
    set_default_exec(old);
    CHECK(bitwise_equal(a, b));
}

TEST_CASE("whole reports are identical across thread counts") {
    for (const char* text : {R"({"model": "shifted", "alpha": 0.5, "beta": 0.3, "dim": 64, "nmax": 16})",
                             R"({"model": "dho", "samples": 20, "grid": 16})",
                             R"({"model": "gll", "k1": 0.2, "k2": -0.1, "nmax": 2, "lmax": 2})"}) {
        RunConfig c = parse_config(text);
        std::string one, four;
        {
            ThreadCap cap(1);
            one = emit_json(run(c));
        }
        {
            ThreadCap cap(4);
            four = emit_json(run(c));
        }
        CHECK(one == four);
    }
}
