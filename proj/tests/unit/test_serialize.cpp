#include <doctest.h>

#include "eichler/error.hpp"
#include "eichler/serialize.hpp"

using namespace eichler;

namespace {

template <class T>
T round_trip(const T& x) {
  return json::parse(json(x).dump()).template get<T>();
}

}  // namespace

TEST_CASE("field elements and polynomials") {
  const FieldCtx* K = fp2_ctx(101);
  for (const auto& x : {Fq(K, 0), Fq(K, 66), Fq(K, 37, 10), Fq(K, 0, 5)}) CHECK(parse_fq(x.str(), 101) == x);
  CHECK_THROWS_AS(parse_fq("zz", 101), Error);
  Poly f = Poly::from_ints(K, {54, 27, 1}) * Poly::linear_root(Fq(K, 3, 4));
  CHECK(poly_from_json(json::parse(poly_to_json(f).dump()), 101) == f);
}

TEST_CASE("forms and orders") {
  BQForm f{11, 6, 111};
  CHECK(round_trip(f) == f);
  json bad = {{"form", {11, 6, 111}}, {"D", -1}};
  CHECK_THROWS_AS(bad.get<BQForm>(), Error);
  auto O = eichler_Oprime(make_params(101, 3, Variant::LambdaPrime), 59, 13);
  auto back = round_trip(O);
  CHECK(same_lattice(back, O));
  CHECK(back.name == O.name);
  REQUIRE(back.label.has_value());
  CHECK(back.label->r == 13);
  CHECK(order_to_form(back) == order_to_form(O));
}

TEST_CASE("reports") {
  auto params = make_params(101, 3);
  CorrespondReport rep{101, correspondence_table(params, 11)};
  auto back = round_trip(rep);
  REQUIRE(back.rows.size() == rep.rows.size());
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    CHECK(back.rows[i].form == rep.rows[i].form);
    CHECK(back.rows[i].j_values == rep.rows[i].j_values);
    CHECK(back.rows[i].gcd_poly == rep.rows[i].gcd_poly);
    CHECK(back.rows[i].rep_solution == rep.rows[i].rep_solution);
    CHECK(back.rows[i].order_label == rep.rows[i].order_label);
  }
  CHECK(json(back) == json(rep));

  GenusReport g{101, 3, 11, Variant::Lambda, lambda_vector(params, 11), genus_class(params, 11),
                ambiguous_in_genus(params, 11).forms};
  CHECK(json(round_trip(g)) == json(g));

  auto ge = export_graph(oriented_graph(params, 2));
  CHECK(json(round_trip(ge)) == json(ge));
  CHECK(json(ge)["conjugation"].size() == 10);

  ClassPolynomial H = hilbert(-303);
  auto Hb = round_trip(H);
  CHECK(Hb.coeffs == H.coeffs);
  CHECK(Hb.D == H.D);

  Check ch{"p101-correspondence-table", true, "6 rows match", 0.5};
  CHECK(json(round_trip(ch)) == json(ch));
  CHECK_THROWS(json::parse(R"({"key":"x"})").get<Check>());
}
