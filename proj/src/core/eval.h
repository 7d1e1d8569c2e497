#pragma once

#include <functional>
#include <map>
#include <string>

#include "core/expr.h"
#include "core/state.h"

namespace tval {

// Interpretation of an uninterpreted function: finite override table
// over canonical argument keys plus a default.
struct FuncInterp {
  Value dflt;
  std::map<std::string, Value> entries;

  Value lookup(const std::string &key) const {
    auto it = entries.find(key);
    return it == entries.end() ? dflt : it->second;
  }
};

std::string value_key(const std::vector<Value> &args);

// Expression evaluator.  Quantifiers are expanded over the full 2^d
// domain (d <= 16); results for subterms independent of the bound
// variables are cached per evaluation session.
class Eval {
public:
  Eval(const std::map<std::string, Value> &env, unsigned width)
      : m_env(&env), m_width(width) {}

  // uninterpreted functions; when absent, uf_fallback is consulted
  std::map<std::string, FuncInterp> funcs;
  std::function<Value(const std::string &, const std::vector<Value> &, Type)>
      uf_fallback;

  Value operator()(const ExprRef &e);
  bool truth(const ExprRef &e) { return (*this)(e).b(); }

  unsigned width() const { return m_width; }

private:
  Value eval(const ExprRef &e);
  bool depends_on_bound(const ExprRef &e);

  const std::map<std::string, Value> *m_env;
  unsigned m_width;
  std::map<const Expr *, Value> m_cache;
  std::map<std::string, Value> m_bound;
  std::map<std::pair<const Expr *, std::string>, bool> m_dep;
};

} // namespace tval
