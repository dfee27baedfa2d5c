#include <doctest.h>

#include <cmath>
#include <random>

#include "curvkit/errors.hpp"
#include "curvkit/linalg.hpp"

using namespace curvkit;

TEST_CASE("jacobi: 2x2 closed form") {
    Matrix a(2, 2);
    a(0, 0) = 2; a(0, 1) = 1; a(1, 0) = 1; a(1, 1) = 2;
    const auto e = jacobi_eigen(a);
    CHECK(e.values[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(e.values[1] == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(std::abs(e.vectors(0, 0)) == doctest::Approx(std::sqrt(0.5)));
}

TEST_CASE("jacobi: reconstruction and orthonormality on random symmetric matrices") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (std::size_t n : {1u, 3u, 7u, 16u}) {
        Matrix a(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) a(i, j) = a(j, i) = u(rng);
        const auto e = jacobi_eigen(a);
        for (std::size_t k = 1; k < n; ++k) CHECK(e.values[k - 1] <= e.values[k]);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                double rec = 0.0, gram = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    rec += e.vectors(i, k) * e.values[k] * e.vectors(j, k);
                    gram += e.vectors(k, i) * e.vectors(k, j);
                }
                CHECK(std::abs(rec - a(i, j)) < 1e-11);
                CHECK(std::abs(gram - (i == j ? 1.0 : 0.0)) < 1e-11);
            }
    }
}

TEST_CASE("cholesky solve") {
    Matrix a(2, 2);
    a(0, 0) = 4; a(0, 1) = 2; a(1, 0) = 2; a(1, 1) = 3;
    const std::vector<double> b{2, 1};
    const auto x = cholesky_solve(a, b);
    CHECK(x[0] == doctest::Approx(0.5));
    CHECK(x[1] == doctest::Approx(0.0));
    Matrix bad(1, 1, -1.0);
    CHECK_THROWS_AS(cholesky_solve(bad, std::vector<double>{1}), ConvergenceError);
}
