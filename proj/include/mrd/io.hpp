#pragma once

#include <string>

#include <json.hpp>

#include "mrd/linkage.hpp"
#include "mrd/solver.hpp"
#include "mrd/verify.hpp"

namespace mrd::io {

using Json = nlohmann::ordered_json;

struct InstanceDoc {
  std::string name;
  Json metadata = Json::object();
  RootedDigraph rooted;
};

/// All parse functions throw Error(Errc::schema) with a JSON-pointer path.
InstanceDoc parse_instance(const Json& j);
InstanceDoc parse_instance_text(const std::string& text);
Json emit_instance(const InstanceDoc& doc);

Matroid parse_matroid(const Json& j, const std::string& where = "");
Json emit_matroid(const Matroid& m);

Json emit_path(const Digraph& d, const Path& p);
Path parse_path(const Digraph& d, const Json& j, const std::string& where = "");

Json emit_linkage(const RootedDigraph& r, const Linkage& lk);
Linkage parse_linkage(const RootedDigraph& r, const Json& j,
                      const std::string& where = "");

Json emit_packing(const RootedDigraph& r, const Packing& p);
Packing parse_packing(const RootedDigraph& r, const Json& j,
                      const std::string& where = "");

Json emit_trace(const RootedDigraph& r, const ExtensionTrace& t);
ExtensionTrace parse_trace(const RootedDigraph& r, const Json& j,
                           const std::string& where = "");

Json emit_certificate(const RootedDigraph& r, const TGoodCertificate& c);
TGoodCertificate parse_certificate(const RootedDigraph& r, const Json& j,
                                   const std::string& where = "");

Json emit_rounds(const RootedDigraph& r, const std::vector<RoundInfo>& rounds);
Json emit_report(const VerifyReport& rep);

Json vertex_names(const Digraph& d, const IndexSet& x);
Json element_names(const Matroid& m, const IndexSet& x);
IndexSet parse_vertex_set(const Digraph& d, const Json& j, const std::string& where);
IndexSet parse_element_set(const Matroid& m, const Json& j, const std::string& where);

/// DOT rendering with root sets attached to the vertex labels.
std::string emit_instance_dot(const InstanceDoc& doc);

/// {"status":"ok"} or the first independence / linkage-condition failure
/// with the engine's witness linkage and certificate.
Json precondition_report(const RootedDigraph& r);

std::string read_file(const std::string& path);

}  // namespace mrd::io
