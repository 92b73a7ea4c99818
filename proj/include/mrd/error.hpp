#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mrd {

enum class Errc {
  unknown_element,
  unknown_vertex,
  unknown_edge,
  invalid_matroid,
  invalid_digraph,
  invalid_instance,
  empty_set,
  not_independent,
  not_in_span,
  precondition,
  edge_not_leaving_root,     // (i,e)-extension with e not in out(pi(i))
  extension_dependent,       // (i,e)-extension with S(head(e))+i dependent
  paths_not_joinable,
  not_on_path,
  inconsistent_linkage,
  schema,
  guard_exceeded,
  internal_defect,
};

std::string_view to_string(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace mrd
