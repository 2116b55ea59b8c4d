#include <catch2/catch_amalgamated.hpp>

#include <tkos/cyclotomic.hpp>
#include <tkos/errors.hpp>

using namespace tkos;

TEST_CASE("euler phi and cyclotomic degrees") {
    CHECK(detail::euler_phi(1) == 1);
    CHECK(detail::euler_phi(2) == 1);
    CHECK(detail::euler_phi(3) == 2);
    CHECK(detail::euler_phi(4) == 2);
    CHECK(detail::euler_phi(6) == 2);
    CHECK(detail::euler_phi(12) == 4);
}

TEST_CASE("zeta is a primitive m-th root of unity") {
    for (unsigned m = 1; m <= 8; ++m) {
        Cyc z = Cyc::zeta(m, 1);
        Cyc acc = Cyc::one(m);
        for (unsigned k = 1; k < m; ++k) {
            acc = acc * z;
            CHECK(acc == Cyc::zeta(m, static_cast<long>(k)));
            if (m > 1) CHECK_FALSE(acc == Cyc::one(m));
        }
        CHECK(acc * z == Cyc::one(m));
    }
}

TEST_CASE("small-order identities") {
    CHECK(Cyc::zeta(1, 0) == Cyc(1));
    CHECK(Cyc::zeta(2, 1) == Cyc(-1));
    // 1 + z + z^2 = 0 in Q(zeta_3)
    CHECK((Cyc::one(3) + Cyc::zeta(3, 1) + Cyc::zeta(3, 2)).is_zero());
    // z^2 = -1 in Q(zeta_4)
    CHECK(Cyc::zeta(4, 1) * Cyc::zeta(4, 1) == Cyc::of(4, mpq_class(-1)));
    // z^2 = z - 1 in Q(zeta_6)
    CHECK(Cyc::zeta(6, 1) * Cyc::zeta(6, 1) == Cyc::zeta(6, 1) - Cyc::one(6));
    // negative exponents wrap
    CHECK(Cyc::zeta(3, -1) == Cyc::zeta(3, 2));
    CHECK(Cyc::zeta(5, 7) == Cyc::zeta(5, 2));
}

TEST_CASE("field arithmetic and inverses") {
    Cyc a = Cyc::of(3, mpq_class(2, 3)) + Cyc::zeta(3, 1);
    Cyc b = Cyc::zeta(3, 2) - Cyc::of(3, mpq_class(1, 2));
    CHECK((a + b) - b == a);
    CHECK(a * b == b * a);
    CHECK(a * (b + Cyc::one(3)) == a * b + a);
    CHECK(a * a.inverse() == Cyc::one(3));
    CHECK(b * b.inverse() == Cyc::one(3));
    Cyc q = Cyc::of(1, mpq_class(-7, 4));
    CHECK(q * q.inverse() == Cyc(1));
    CHECK_THROWS_AS(Cyc::zero(3).inverse(), Error);
}

TEST_CASE("rational values lift across orders") {
    Cyc half2 = Cyc::of(2, mpq_class(1, 2));
    Cyc z3 = Cyc::zeta(3, 1);
    Cyc s = half2 + z3;  // rational side lifts into Q(zeta_3)
    CHECK(s - z3 == Cyc::of(3, mpq_class(1, 2)));
    CHECK(half2.is_rational());
    CHECK(half2.as_rational() == mpq_class(1, 2));
    CHECK_FALSE(z3.is_rational());
    CHECK_THROWS_AS(Cyc::zeta(3, 1) + Cyc::zeta(4, 1), MixedOrders);
}

TEST_CASE("printing") {
    CHECK(Cyc().str() == "0");
    CHECK(Cyc(1).str() == "1");
    CHECK(Cyc::of(2, mpq_class(-1, 2)).str() == "-1/2");
    CHECK(Cyc::zeta(3, 1).str() == "z");
    // powers at or above phi(m) reduce into the power basis 1, z, ..,
    // z^{phi(m)-1}, so 2*z^2 over m = 3 normalizes to -2-2*z
    CHECK((Cyc::of(3, mpq_class(2)) * Cyc::zeta(3, 2)).str() == "-2-2*z");
    CHECK((Cyc::one(3) - Cyc::zeta(3, 1)).str() == "1-z");
}
