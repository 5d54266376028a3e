// JSON serialization for digraphs, analysis reports, certificates, and
// Green's verdicts, plus the RunReport envelope emitted by the CLI.

#ifndef DIHYP_SERIALIZE_HPP_
#define DIHYP_SERIALIZE_HPP_

#include "dihyp/greens.hpp"
#include "dihyp/tessellation.hpp"
#include "json.hpp"

namespace dihyp {

using Json = nlohmann::ordered_json;

// Digraph <-> {"vertices": [...], "edges": [{"from","to","label"?}, ...]}.
Json digraph_to_json(const Digraph& g);
Digraph digraph_from_json(const Json& j);

// Parses the DOT dialect emitted by Digraph::to_dot: quoted vertex
// statements and quoted edge statements with an optional [label="..."].
Digraph digraph_from_dot(const std::string& text);

// Parses the JSON object format ('{' first), the DOT format ("digraph"
// first), or the plain edge-list text format.
Digraph parse_digraph(const std::string& text);

std::string rational_str(const Rational& x);

Json ext_distance_to_json(const ExtDistance& d);

Json path_to_json(const Digraph& g, const Path& p);
Json triangle_to_json(const Digraph& g, const GeodesicTriangle& t);

Json thinness_report_to_json(const Digraph& g, const ThinnessReport& r);
Json constants_report_to_json(const ConstantsReport& r);
Json greens_constants_to_json(const GreensConstants& c);
Json certificate_to_json(const Digraph& g, const TessellationCertificate& c);
Json greens_verdict_to_json(const MonoidPresentation& p,
                            const GreensVerdict& v);
Json dehn_table_to_json(const DehnTable& t);
Json cayley_ball_to_json(const CayleyBall& ball);

// Envelope: {"tool","version","subcommand","inputs","parameters",
//            "payload","elapsed_ms"}. Replaying the recorded inputs with
// the recorded parameters reproduces the payload byte-identically; timing
// sits outside the reproducible part.
Json run_report(const std::string& subcommand, const Json& inputs,
                const Json& parameters, const Json& payload,
                double elapsed_ms);

}  // namespace dihyp

#endif  // DIHYP_SERIALIZE_HPP_
