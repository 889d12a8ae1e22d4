#include "zetalift/serialize.hpp"

namespace zetalift::ser {

Json to_json(const cyc::CycElt& x) {
  Json coeffs = Json::array();
  for (const Int& c : x.coeffs()) coeffs.push_back(c.get_str());
  return Json{{"p", x.params().p}, {"n", x.params().n}, {"coeffs", std::move(coeffs)}};
}

Json to_json(const units::CycClass& c) {
  Json factors = Json::array();
  for (const auto& f : c.factors())
    factors.push_back(Json{{"base", to_json(f.base)}, {"exp", f.exp.get_str()}});
  return factors;
}

Json to_json(const la::MatI& M) {
  Json rows = Json::array();
  for (long i = 0; i < M.rows; ++i) {
    Json row = Json::array();
    for (long j = 0; j < M.cols; ++j) row.push_back(M(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const la::ModStruct& s) {
  return Json{{"cyclic_orders", s.cyclic_orders}};
}

Json to_json(const reg::RegularityReport& r) {
  return Json{{"p", r.p}, {"regular", r.regular}, {"indices", r.irregular_indices}};
}

Json to_json(const cohom::Cochain& f) {
  const cohom::FiniteGroup& G = f.module().group();
  long N = G.size();
  long rank = f.module().rank();
  Json values = Json::array();
  std::vector<long> args(static_cast<size_t>(f.degree()), 0);
  bool more = true;
  while (more) {
    Json labels = Json::array();
    for (long a : args) labels.push_back(G.label(a));
    la::VecI v = f.get(args);
    Json entry{{"args", std::move(labels)}};
    if (rank == 1)
      entry["value"] = v[0];
    else
      entry["value"] = v;
    values.push_back(std::move(entry));
    more = false;
    for (size_t i = args.size(); i-- > 0;) {
      if (++args[i] < N) {
        more = true;
        break;
      }
      args[i] = 0;
    }
    if (args.empty()) break;
  }
  return Json{{"degree", f.degree()}, {"values", std::move(values)}};
}

Json to_json(const cohom::Obstruction& ob) {
  Json coords = Json::array();
  for (const auto& [idx, val] : ob.cokernel_coords) coords.push_back(Json::array({idx, val}));
  return Json{{"cokernel_coords", std::move(coords)}};
}

Json to_json(const heis::HeisCochain& k) {
  Json obj = Json::object();
  for (long g = 0; g < k.group().size(); ++g) {
    const heis::HeisElt& v = k.at(g);
    obj[k.group().label(g)] = Json::array({v.x, v.y, v.z});
  }
  return obj;
}

Json to_json(const specseq::E11Presentation& pres) {
  Json T = Json::array();
  for (const Int& q : pres.T) T.push_back(q.get_str());
  return Json{{"p", pres.p},
              {"n", pres.n},
              {"T", std::move(T)},
              {"generators", pres.gen_labels},
              {"unit_generators", pres.unit_gens},
              {"gamma", pres.gamma},
              {"action", to_json(pres.action)},
              {"places", pres.place_labels}};
}

Json val_vector_json(const std::vector<long>& v, const vals::TildeT& tt) {
  Json pairs = Json::array();
  for (size_t i = 0; i < tt.primes.size(); ++i)
    pairs.push_back(Json::array({tt.primes[i].label(), v[i]}));
  return pairs;
}

}  // namespace zetalift::ser
