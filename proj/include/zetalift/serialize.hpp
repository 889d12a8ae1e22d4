#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "zetalift/cyc_units.hpp"
#include "zetalift/gcohom.hpp"
#include "zetalift/heis.hpp"
#include "zetalift/regular.hpp"
#include "zetalift/spec_seq.hpp"
#include "zetalift/valuations.hpp"

// JSON views of the library's value types, used by the CLI. Object keys are
// emitted in sorted order, so equal values serialize to identical bytes.
namespace zetalift::ser {

using Json = nlohmann::json;

Json to_json(const cyc::CycElt& x);  // {"p", "n", "coeffs": [decimal strings]}
Json to_json(const units::CycClass& c);
Json to_json(const la::MatI& M);
Json to_json(const la::ModStruct& s);
Json to_json(const reg::RegularityReport& r);
Json to_json(const cohom::Cochain& f);
Json to_json(const cohom::Obstruction& ob);
Json to_json(const heis::HeisCochain& k);
Json to_json(const specseq::E11Presentation& pres);
// ordered (place label, residue) pairs, indexed like tt.primes
Json val_vector_json(const std::vector<long>& v, const vals::TildeT& tt);

}  // namespace zetalift::ser
