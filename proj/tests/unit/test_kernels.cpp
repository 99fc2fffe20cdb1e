#include <doctest.h>

#include <cstring>
#include <limits>
#include <random>
#include <vector>

#include "ultratree/errors.hpp"
#include "ultratree/kernels.hpp"

using namespace ultratree::kernels;

namespace {

const double inf = std::numeric_limits<double>::infinity();

std::vector<double> random_row(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    std::vector<double> v(n);
    for (auto& x : v) {
        const auto r = rng() % 16;
        x = r == 0 ? inf : r == 1 ? -inf : r == 2 ? 0.0 : r == 3 ? -0.0 : u(rng);
    }
    return v;
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

std::vector<Backend> vector_backends() {
    std::vector<Backend> out;
    for (Backend b : {Backend::avx2, Backend::neon})
        if (backend_available(b)) out.push_back(b);
    return out;
}

}  // namespace

TEST_CASE("scalar kernels on small hand cases") {
    const KernelTable& k = table(Backend::scalar);
    std::vector<double> x{inf, 1.0, 3.0}, y{1.0, inf, 3.0};
    CHECK(k.ultrametric_violation(x, y, 1.0, 1e-9));   // z = 2: min(3, 3) > 1
    CHECK_FALSE(k.ultrametric_violation(x, y, 3.0, 1e-9));

    std::vector<double> row{0.0, 5.0, 2.0}, via{4.0, 1.0, 9.0};
    k.minimax_relax(row, via, 3.0);
    CHECK(row == std::vector<double>{0.0, 3.0, 2.0});

    std::vector<double> out(2), t{1.0, -2.0}, h{0.5, 4.0};
    k.tree_distance_row(out, t, h, 2.0);
    CHECK(out[0] == 2.0);  // 3 - 2 * 0.5
    CHECK(out[1] == 4.0);  // 0 - 2 * -2
}

TEST_CASE("vector kernels are bit-identical to the scalar reference") {
    const auto backends = vector_backends();
    if (backends.empty()) {
        MESSAGE("no vector backend on this CPU; scalar only");
        return;
    }
    std::mt19937_64 rng(42);
    const KernelTable& ref = table(Backend::scalar);
    for (Backend b : backends) {
        CAPTURE(backend_name(b));
        const KernelTable& vec = table(b);
        for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 16u, 31u, 64u, 65u}) {
            for (int rep = 0; rep < 50; ++rep) {
                auto a = random_row(rng, n), c = random_row(rng, n), d = random_row(rng, n);
                const double s = std::uniform_real_distribution<double>(-5, 5)(rng);
                const double slack = 1e-9;
                CHECK(ref.ultrametric_violation(a, c, s, slack) == vec.ultrametric_violation(a, c, s, slack));

                auto r1 = a, r2 = a;
                ref.minimax_relax(r1, c, std::abs(s));
                vec.minimax_relax(r2, c, std::abs(s));
                CHECK(same_bits(r1, r2));

                // gromov/tree rows never see -inf paired with +inf in practice;
                // keep those lanes finite so both sides stay NaN-free.
                for (auto* v : {&a, &c, &d})
                    for (auto& x : *v)
                        if (std::isinf(x)) x = std::copysign(50.0, x);
                std::vector<double> o1(n), o2(n);
                ref.gromov_row(o1, a, c, s, s - 1.0);
                vec.gromov_row(o2, a, c, s, s - 1.0);
                CHECK(same_bits(o1, o2));
                ref.tree_distance_row(o1, a, d, s);
                vec.tree_distance_row(o2, a, d, s);
                CHECK(same_bits(o1, o2));
            }
        }
    }
}

TEST_CASE("backend selection") {
    CHECK(backend_available(Backend::scalar));
    CHECK(backend_available(active_backend()));
    force_backend(Backend::scalar);
    CHECK(active_backend() == Backend::scalar);
    reset_backend();
    for (Backend b : {Backend::avx2, Backend::neon}) {
        if (!backend_available(b)) {
            CHECK_THROWS_AS(force_backend(b), ultratree::DomainError);
            CHECK_THROWS_AS(table(b), ultratree::DomainError);
        }
    }
    CHECK(backend_name(Backend::avx2) == "avx2");
}
