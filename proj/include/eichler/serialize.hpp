#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "eichler/classpoly.hpp"
#include "eichler/correspond.hpp"
#include "eichler/oriented.hpp"
#include "eichler/quat.hpp"
#include "eichler/verify.hpp"

namespace eichler {

using json = nlohmann::json;

// Field elements travel as their display string "u" or "u+v*a".
Fq parse_fq(const std::string& s, i64 p);
json poly_to_json(const Poly& f);  // ascending coefficients
Poly poly_from_json(const json& j, i64 p);

// Plain projections of command results, so every emitted object has a type to parse back into.
struct GenusReport {
  i64 p = 0, c = 0, q = 0;
  Variant variant = Variant::Lambda;
  std::vector<int> lambda;
  std::vector<BQForm> forms;
  std::vector<BQForm> ambiguous;
};

struct EichlerReport {
  QuatOrder order;
  std::string disc;
  BQForm form;
  std::vector<i64> minima;
};

struct GraphExport {
  i64 p = 0, c = 0;
  int ell = 0;
  struct Node {
    std::string id, j, kernel;
    bool surface = false;
    std::string conj;
  };
  std::vector<Node> nodes;
  std::vector<std::pair<std::string, std::string>> edges;
  bool certified = false;
  bool symmetric = false;
};
GraphExport export_graph(const OrientedGraph& g);

struct CorrespondReport {
  i64 p = 0;
  std::vector<CorrespondenceRow> rows;
};

void to_json(json& j, const Variant& v);
void from_json(const json& j, Variant& v);
void to_json(json& j, const BQForm& f);
void from_json(const json& j, BQForm& f);
void to_json(json& j, const QuatAlgebra& a);
void from_json(const json& j, QuatAlgebra& a);
void to_json(json& j, const QuatOrder& O);
void from_json(const json& j, QuatOrder& O);
void to_json(json& j, const CorrespondReport& r);
void from_json(const json& j, CorrespondReport& r);
void to_json(json& j, const GenusReport& r);
void from_json(const json& j, GenusReport& r);
void to_json(json& j, const EichlerReport& r);
void from_json(const json& j, EichlerReport& r);
void to_json(json& j, const GraphExport& g);
void from_json(const json& j, GraphExport& g);
void to_json(json& j, const ClassPolynomial& H);
void from_json(const json& j, ClassPolynomial& H);
void to_json(json& j, const Check& c);
void from_json(const json& j, Check& c);

}  // namespace eichler
