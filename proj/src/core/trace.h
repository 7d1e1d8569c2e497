#pragma once

#include <string>
#include <vector>

#include "core/region.h"
#include "core/value.h"

namespace tval {

enum class ErrCode : uint8_t { None, U, W };

std::string err_str(ErrCode e);

enum class EvKind : uint8_t {
  Silent,
  AllocBegin, // site, size, align
  AllocEnd,   // site, interval [lo,hi], memory projection
  Dealloc,    // site
  Call,       // callee, args, observable regions, memory projection
  Ret,        // optional value(s), memory projection
  Exit,
  Error,
  RawIO, // values read from or written to the world
};

struct TraceEvent {
  EvKind kind = EvKind::Silent;
  RegionTable::Idx site = 0;
  ErrCode err = ErrCode::None;
  std::string callee;
  std::vector<Value> vals;
  std::vector<RegionTable::Idx> regions;
  bool has_mem = false;
  AddrSet mset;
  MemArray mproj;

  bool is_silent() const { return kind == EvKind::Silent; }
  bool is_terminal() const { return kind == EvKind::Exit || kind == EvKind::Error; }
  bool operator==(const TraceEvent &o) const;
  std::string str() const;
};

using Trace = std::vector<TraceEvent>;

// Equality / prefix of the non-silent projections.
bool trace_stutter_eq(const Trace &a, const Trace &b);
bool trace_stutter_prefix(const Trace &a, const Trace &b); // a prefix of b

// Error code of a trace: None unless it ends with an Error event.
ErrCode trace_err(const Trace &t);
// Non-error part (drops a trailing Error event).
Trace trace_nonerr(const Trace &t);

} // namespace tval
