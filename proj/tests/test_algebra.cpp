#include <doctest.h>

#include <random>

#include "qms/algebra.hpp"

using namespace qms;

namespace {

AlgebraElement pauli(const AlgebraSpec& spec, char which) {
    Matrix m(2, 2);
    switch (which) {
        case 'x': m << 0, 1, 1, 0; break;
        case 'y': m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0); break;
        case 'z': m << 1, 0, 0, -1; break;
        default: throw std::logic_error("bad pauli");
    }
    return {spec, {m}};
}

AlgebraElement random_element(const AlgebraSpec& spec, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Matrix> blocks;
    for (int b = 0; b < spec.num_blocks(); ++b) {
        const int n = spec.block_dim(b);
        Matrix m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = Complex(gauss(rng), gauss(rng));
        blocks.push_back(std::move(m));
    }
    return {spec, std::move(blocks)};
}

}  // namespace

TEST_CASE("spec dimensions and validation") {
    const AlgebraSpec spec({2, 3});
    CHECK(spec.gns_dim() == 13);
    CHECK(spec.center_dim() == 2);
    CHECK(spec.block_offset(1) == 4);
    CHECK_THROWS_AS(AlgebraSpec({}), argument_error);
    CHECK_THROWS_AS(AlgebraSpec({2, 0}), argument_error);
}

TEST_CASE("compose basics") {
    const AlgebraSpec m2({2});
    const auto sx = pauli(m2, 'x');
    const auto sz = pauli(m2, 'z');
    const auto id = AlgebraElement::identity(m2);

    std::mt19937_64 rng(11);
    const auto a = random_element(m2, rng);
    CHECK(hs_norm(compose(id, a) - a) == doctest::Approx(0.0));

    // sigma_x sigma_z = -i sigma_y
    const auto sy = pauli(m2, 'y');
    CHECK(hs_norm(compose(sx, sz) - sy * Complex(0, -1)) == doctest::Approx(0.0));

    // blockwise independence on M2 + M3
    const AlgebraSpec m23({2, 3});
    std::mt19937_64 rng2(5);
    const auto u = random_element(m23, rng2);
    const auto v = random_element(m23, rng2);
    const auto w = compose(u, v);
    for (int b = 0; b < 2; ++b)
        CHECK((w.block(b) - u.block(b) * v.block(b)).norm() == doctest::Approx(0.0));

    CHECK_THROWS_AS(compose(a, u), structural_error);
}

TEST_CASE("adjoint") {
    const AlgebraSpec m2({2});
    const auto sx = pauli(m2, 'x');
    const auto sz = pauli(m2, 'z');
    CHECK(hs_norm(sx.adjoint() - sx) == doctest::Approx(0.0));
    const auto isz = sz * Complex(0, 1);
    CHECK(hs_norm(isz.adjoint() + isz) == doctest::Approx(0.0));

    std::mt19937_64 rng(3);
    const auto a = random_element(m2, rng);
    const auto b = random_element(m2, rng);
    CHECK(hs_norm(a.adjoint().adjoint() - a) == doctest::Approx(0.0));
    CHECK(hs_norm(compose(a, b).adjoint() - compose(b.adjoint(), a.adjoint())) ==
          doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("generated subalgebra dimensions") {
    const AlgebraSpec m2({2});
    const auto gz = generated_subalgebra({pauli(m2, 'z')});
    CHECK(gz.dimension == 2);
    CHECK_FALSE(gz.generates_M);

    const auto gxz = generated_subalgebra({pauli(m2, 'x'), pauli(m2, 'z')});
    CHECK(gxz.dimension == 4);
    CHECK(gxz.generates_M);

    const AlgebraSpec m23({2, 3});
    // the unital algebra generated by 1 alone is the scalars
    const auto gid = generated_subalgebra({AlgebraElement::identity(m23)});
    CHECK(gid.dimension == 1);
    CHECK_FALSE(gid.generates_M);

    CHECK_THROWS_AS(generated_subalgebra({}), argument_error);
}

TEST_CASE("generated subalgebra closure properties") {
    const AlgebraSpec m23({2, 3});
    std::mt19937_64 rng(17);
    std::vector<AlgebraElement> family = {random_element(m23, rng)};
    const auto gen = generated_subalgebra(family);

    // basis closed under compose and adjoint up to span tolerance
    Matrix basis(m23.gns_dim(), gen.dimension);
    for (int j = 0; j < gen.dimension; ++j) basis.col(j) = gen.basis[j].flatten();
    auto span_residual = [&](const AlgebraElement& x) {
        const Vector v = x.flatten();
        return (v - basis * (basis.adjoint() * v)).norm();
    };
    for (int i = 0; i < gen.dimension; ++i) {
        CHECK(span_residual(gen.basis[i].adjoint()) < 1e-12 * m23.gns_dim());
        for (int j = 0; j < gen.dimension; ++j)
            CHECK(span_residual(compose(gen.basis[i], gen.basis[j])) < 1e-11);
    }

    // adding the center never shrinks the generated dimension
    std::vector<AlgebraElement> with_center = family;
    for (const auto& e : center_basis(m23)) with_center.push_back(e);
    CHECK(generated_subalgebra(with_center).dimension >= gen.dimension);
}

TEST_CASE("center basis commutes") {
    const AlgebraSpec m23({2, 3});
    const auto center = center_basis(m23);
    REQUIRE(center.size() == 2);
    CHECK((center[0].block(0) - Matrix::Identity(2, 2)).norm() == doctest::Approx(0.0));
    CHECK(center[0].block(1).norm() == doctest::Approx(0.0));

    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 100; ++trial) {
        const auto a = random_element(m23, rng);
        for (const auto& e : center)
            CHECK(hs_norm(compose(e, a) - compose(a, e)) < 1e-12 * std::max(1.0, hs_norm(a)));
    }

    const AlgebraSpec classical({1, 1});
    const auto proj = center_basis(classical);
    CHECK(proj.size() == 2);
    CHECK(proj[0].block(0)(0, 0) == Complex(1, 0));
    CHECK(proj[0].block(1)(0, 0) == Complex(0, 0));
}

TEST_CASE("factor detection") {
    CHECK(is_factor(AlgebraSpec({2})));
    CHECK_FALSE(is_factor(AlgebraSpec({2, 3})));
    CHECK(is_factor(AlgebraSpec({4})));
}

TEST_CASE("self-adjoint split") {
    const AlgebraSpec m2({2});
    std::mt19937_64 rng(2);
    const auto x = random_element(m2, rng);
    const auto [re, im] = split_self_adjoint(x);
    CHECK(re.is_self_adjoint(1e-12));
    CHECK(im.is_self_adjoint(1e-12));
    CHECK(hs_norm(re + im * Complex(0, 1) - x) < 1e-12);
}
