#include "core/trace.h"

#include <sstream>

namespace tval {

std::string err_str(ErrCode e) {
  switch (e) {
  case ErrCode::None: return "none";
  case ErrCode::U: return "U";
  case ErrCode::W: return "W";
  }
  return "?";
}

bool TraceEvent::operator==(const TraceEvent &o) const {
  if (kind != o.kind || site != o.site || err != o.err || callee != o.callee ||
      regions != o.regions || has_mem != o.has_mem)
    return false;
  if (vals != o.vals)
    return false;
  if (has_mem && (!(mset == o.mset) || !(mproj == o.mproj)))
    return false;
  return true;
}

std::string TraceEvent::str() const {
  std::ostringstream ss;
  switch (kind) {
  case EvKind::Silent: return "_";
  case EvKind::AllocBegin: ss << "allocBegin(z" << site; break;
  case EvKind::AllocEnd: ss << "allocEnd(z" << site; break;
  case EvKind::Dealloc: ss << "dealloc(z" << site; break;
  case EvKind::Call: ss << "call(" << callee; break;
  case EvKind::Ret: ss << "ret("; break;
  case EvKind::Exit: return "exit";
  case EvKind::Error: return err_str(err);
  case EvKind::RawIO: ss << "io("; break;
  }
  for (auto &v : vals)
    ss << "," << v.str();
  if (has_mem)
    ss << ",m@" << mset.str();
  ss << ")";
  return ss.str();
}

static void nonsilent(const Trace &t, std::vector<const TraceEvent *> &out) {
  for (auto &e : t)
    if (!e.is_silent())
      out.push_back(&e);
}

bool trace_stutter_eq(const Trace &a, const Trace &b) {
  std::vector<const TraceEvent *> xs, ys;
  nonsilent(a, xs);
  nonsilent(b, ys);
  if (xs.size() != ys.size())
    return false;
  for (size_t i = 0; i < xs.size(); i++)
    if (!(*xs[i] == *ys[i]))
      return false;
  return true;
}

bool trace_stutter_prefix(const Trace &a, const Trace &b) {
  std::vector<const TraceEvent *> xs, ys;
  nonsilent(a, xs);
  nonsilent(b, ys);
  if (xs.size() > ys.size())
    return false;
  for (size_t i = 0; i < xs.size(); i++)
    if (!(*xs[i] == *ys[i]))
      return false;
  return true;
}

ErrCode trace_err(const Trace &t) {
  if (!t.empty() && t.back().kind == EvKind::Error)
    return t.back().err;
  return ErrCode::None;
}

Trace trace_nonerr(const Trace &t) {
  if (trace_err(t) == ErrCode::None)
    return t;
  Trace r = t;
  r.pop_back();
  return r;
}

} // namespace tval
