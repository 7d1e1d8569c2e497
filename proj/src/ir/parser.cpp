#include <cctype>
#include <sstream>

#include "ir/ast.h"

namespace tval {

std::string IROperand::str() const {
  switch (k) {
  case K::Const: return std::to_string(cval);
  case K::Temp: return "%" + name;
  case K::ParamAddr: return "%" + name;
  case K::GlobalAddr: return "@" + name;
  }
  return "?";
}

const IRProcedure *IRProgram::find_proc(const std::string &n) const {
  for (auto &p : procs)
    if (p.name == n)
      return &p;
  return nullptr;
}

const IRDeclare *IRProgram::find_declare(const std::string &n) const {
  for (auto &d : declares)
    if (d.name == n)
      return &d;
  return nullptr;
}

namespace {

struct Cursor {
  std::string s;
  size_t pos = 0;
  int line = 0;

  [[noreturn]] void fail(const std::string &msg) const {
    throw ParseError{line, (int)pos + 1, msg};
  }
  void skip_ws() {
    while (pos < s.size() && isspace((uint8_t)s[pos]))
      pos++;
  }
  bool eof() {
    skip_ws();
    return pos >= s.size();
  }
  bool peek(char c) {
    skip_ws();
    return pos < s.size() && s[pos] == c;
  }
  bool accept(char c) {
    if (peek(c)) {
      pos++;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c))
      fail(std::string("expected '") + c + "'");
  }
  bool accept_word(const std::string &w) {
    skip_ws();
    if (s.compare(pos, w.size(), w) == 0) {
      size_t end = pos + w.size();
      if (end >= s.size() || !(isalnum((uint8_t)s[end]) || s[end] == '_')) {
        pos = end;
        return true;
      }
    }
    return false;
  }
  std::string ident() {
    skip_ws();
    size_t b = pos;
    while (pos < s.size() && (isalnum((uint8_t)s[pos]) || s[pos] == '_' ||
                              s[pos] == '.' || s[pos] == '$'))
      pos++;
    if (b == pos)
      fail("expected identifier");
    return s.substr(b, pos - b);
  }
  uint64_t number() {
    skip_ws();
    size_t b = pos;
    bool neg = false;
    if (pos < s.size() && s[pos] == '-') {
      neg = true;
      pos++;
    }
    if (pos >= s.size() || !isdigit((uint8_t)s[pos]))
      fail("expected number");
    uint64_t v = strtoull(s.c_str() + pos, nullptr, 0);
    while (pos < s.size() && (isalnum((uint8_t)s[pos]) || s[pos] == 'x'))
      pos++;
    (void)b;
    return neg ? (uint64_t)(-(int64_t)v) : v;
  }
};

IRTypeRef parse_type(Cursor &c) {
  c.skip_ws();
  if (c.accept('[')) {
    uint64_t n = c.number();
    if (!c.accept_word("x"))
      c.fail("expected 'x' in array type");
    IRTypeRef e = parse_type(c);
    c.expect(']');
    return IRType::array(e, n);
  }
  if (c.accept('{')) {
    std::vector<IRTypeRef> fs;
    if (!c.peek('}')) {
      fs.push_back(parse_type(c));
      while (c.accept(','))
        fs.push_back(parse_type(c));
    }
    c.expect('}');
    return IRType::strct(std::move(fs));
  }
  std::string id = c.ident();
  if (id == "ptr")
    return IRType::ptr();
  if (id.size() >= 2 && id[0] == 'i') {
    unsigned bits = atoi(id.c_str() + 1);
    if (bits == 1 || bits == 8 || bits == 16 || bits == 32)
      return IRType::i(bits);
  }
  c.fail("unknown type '" + id + "'");
}

IROperand parse_operand(Cursor &c, const IRProcedure &proc) {
  c.skip_ws();
  if (c.accept('%')) {
    std::string n = c.ident();
    for (auto &p : proc.params)
      if (p.name == n)
        return {IROperand::K::ParamAddr, 0, n};
    return {IROperand::K::Temp, 0, n};
  }
  if (c.accept('@')) {
    std::string n = c.ident();
    return {IROperand::K::GlobalAddr, 0, n};
  }
  return IROperand::c(c.number());
}

bool is_opname(const std::string &w) {
  static const char *ops[] = {
      "add", "sub", "mul", "udiv", "sdiv", "urem", "srem", "and", "or",
      "xor", "shl", "lshr", "ashr", "padd", "psub", "eq", "ne", "ult",
      "ule", "ugt", "uge", "slt", "sle", "sgt", "sge", "neg", "not"};
  for (auto *o : ops)
    if (w == o)
      return true;
  if (w.rfind("zext.", 0) == 0 || w.rfind("sext.", 0) == 0 ||
      w.rfind("trunc.", 0) == 0)
    return true;
  return false;
}

} // namespace

IRProgram parse_ir(const std::string &text) {
  IRProgram prog;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  IRProcedure *cur = nullptr;
  std::string last_label;
  int sub = 0;

  auto strip = [](std::string s) {
    size_t h = s.find('#');
    if (h != std::string::npos)
      s = s.substr(0, h);
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
      return std::string();
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
  };

  while (std::getline(in, raw)) {
    lineno++;
    std::string linetext = strip(raw);
    if (linetext.empty())
      continue;
    Cursor c{linetext, 0, lineno};

    if (!cur) {
      if (c.accept_word("global")) {
        IRGlobal g;
        g.name = c.ident();
        while (!c.eof()) {
          if (c.accept_word("size"))
            g.size = c.number();
          else if (c.accept_word("align"))
            g.align = (unsigned)c.number();
          else if (c.accept_word("ro"))
            g.read_only = true;
          else if (c.accept_word("init")) {
            while (!c.eof())
              g.init.push_back((uint8_t)c.number());
          } else
            c.fail("bad global attribute");
        }
        if (g.size == 0)
          c.fail("global needs a size");
        prog.globals.push_back(std::move(g));
        continue;
      }
      if (c.accept_word("declare")) {
        IRDeclare d;
        if (!c.accept_word("void"))
          d.ret_ty = parse_type(c);
        c.expect('@');
        d.name = c.ident();
        c.expect('(');
        if (!c.peek(')')) {
          do {
            c.skip_ws();
            if (c.s.compare(c.pos, 3, "...") == 0) {
              c.pos += 3;
              d.variadic = true;
              break;
            }
            d.params.push_back(parse_type(c));
          } while (c.accept(','));
        }
        c.expect(')');
        prog.declares.push_back(std::move(d));
        continue;
      }
      if (c.accept_word("def")) {
        IRProcedure p;
        if (!c.accept_word("void"))
          p.ret_ty = parse_type(c);
        c.expect('@');
        p.name = c.ident();
        c.expect('(');
        if (!c.peek(')')) {
          do {
            c.skip_ws();
            if (c.s.compare(c.pos, 3, "...") == 0) {
              c.pos += 3;
              p.variadic = true;
              break;
            }
            IRParam prm;
            prm.ty = parse_type(c);
            c.expect('%');
            prm.name = c.ident();
            p.params.push_back(std::move(prm));
          } while (c.accept(','));
        }
        c.expect(')');
        c.expect('{');
        prog.procs.push_back(std::move(p));
        cur = &prog.procs.back();
        last_label.clear();
        sub = 0;
        continue;
      }
      c.fail("expected global/declare/def");
    }

    if (c.accept('}')) {
      cur = nullptr;
      continue;
    }

    // optional label
    IRInstr ins;
    ins.line = lineno;
    {
      size_t save = c.pos;
      std::string maybe;
      c.skip_ws();
      size_t b = c.pos;
      while (c.pos < c.s.size() &&
             (isalnum((uint8_t)c.s[c.pos]) || c.s[c.pos] == '_'))
        c.pos++;
      maybe = c.s.substr(b, c.pos - b);
      if (!maybe.empty() && c.accept(':')) {
        ins.label = maybe;
        last_label = maybe;
        sub = 0;
      } else {
        c.pos = save;
        if (last_label.empty())
          c.fail("first instruction needs a label");
        ins.label = last_label + "." + std::to_string(++sub);
      }
    }
    if (c.eof())
      c.fail("label without instruction");

    auto operand = [&](Cursor &cc) { return parse_operand(cc, *cur); };

    if (c.accept('%')) {
      ins.target = c.ident();
      c.expect('=');
      if (c.accept_word("alloc")) {
        ins.k = IRInstr::K::Alloc;
        ins.addr = operand(c); // element count
        c.expect(',');
        ins.ty = parse_type(c);
        c.expect(',');
        ins.align = (unsigned)c.number();
        if (c.accept(','))
          if (c.accept_word("za"))
            ins.site_is_za = true;
        ins.site = ins.label;
      } else if (c.accept_word("load")) {
        ins.k = IRInstr::K::Load;
        ins.ty = parse_type(c);
        c.expect(',');
        ins.align = (unsigned)c.number();
        c.expect(',');
        ins.addr = operand(c);
      } else if (c.accept_word("call")) {
        ins.k = IRInstr::K::Call;
        if (!c.accept_word("void"))
          ins.ret_ty = parse_type(c);
        c.expect('@');
        ins.callee = c.ident();
        c.expect('(');
        if (!c.peek(')')) {
          do
            ins.args.push_back(operand(c));
          while (c.accept(','));
        }
        c.expect(')');
      } else if (c.accept_word("calls")) {
        ins.k = IRInstr::K::CallSugar;
        if (!c.accept_word("void"))
          ins.ret_ty = parse_type(c);
        c.expect('@');
        ins.callee = c.ident();
        c.expect('(');
        if (!c.peek(')')) {
          do {
            IRTypeRef t = parse_type(c);
            IROperand o = operand(c);
            ins.typed_args.emplace_back(t, o);
          } while (c.accept(','));
        }
        c.expect(')');
      } else if (c.accept_word("va_arg")) {
        ins.k = IRInstr::K::VaArg;
        ins.ty = parse_type(c);
        c.expect(',');
        ins.addr = operand(c);
      } else if (c.accept_word("va_start_ptr")) {
        ins.k = IRInstr::K::VaStartPtr;
      } else {
        c.skip_ws();
        size_t b = c.pos;
        while (c.pos < c.s.size() &&
               (isalnum((uint8_t)c.s[c.pos]) || c.s[c.pos] == '.' ||
                c.s[c.pos] == '_'))
          c.pos++;
        std::string w = c.s.substr(b, c.pos - b);
        if (is_opname(w)) {
          ins.k = IRInstr::K::Op;
          ins.opname = w;
          if (!c.eof()) {
            ins.args.push_back(operand(c));
            while (c.accept(','))
              ins.args.push_back(operand(c));
          }
        } else if (!w.empty() && (isdigit((uint8_t)w[0]) || w[0] == '-')) {
          ins.k = IRInstr::K::AssignConst;
          Cursor c2{w, 0, lineno};
          ins.addr = IROperand::c(c2.number());
        } else {
          c.fail("unknown instruction '" + w + "'");
        }
      }
    } else if (c.accept_word("dealloc")) {
      ins.k = IRInstr::K::Dealloc;
      ins.site = c.ident();
    } else if (c.accept_word("store")) {
      ins.k = IRInstr::K::Store;
      ins.ty = parse_type(c);
      c.expect(',');
      ins.align = (unsigned)c.number();
      c.expect(',');
      ins.val = operand(c);
      c.expect(',');
      ins.addr = operand(c);
    } else if (c.accept_word("call")) {
      ins.k = IRInstr::K::Call;
      if (!c.accept_word("void"))
        ins.ret_ty = parse_type(c);
      c.expect('@');
      ins.callee = c.ident();
      c.expect('(');
      if (!c.peek(')')) {
        do
          ins.args.push_back(operand(c));
        while (c.accept(','));
      }
      c.expect(')');
    } else if (c.accept_word("calls")) {
      ins.k = IRInstr::K::CallSugar;
      if (!c.accept_word("void"))
        ins.ret_ty = parse_type(c);
      c.expect('@');
      ins.callee = c.ident();
      c.expect('(');
      if (!c.peek(')')) {
        do {
          IRTypeRef t = parse_type(c);
          IROperand o = operand(c);
          ins.typed_args.emplace_back(t, o);
        } while (c.accept(','));
      }
      c.expect(')');
    } else if (c.accept_word("ret")) {
      ins.k = IRInstr::K::Ret;
      if (!c.eof())
        ins.retval = operand(c);
    } else if (c.accept_word("br")) {
      ins.k = IRInstr::K::Branch;
      ins.addr = operand(c);
      c.expect(',');
      ins.t1 = c.ident();
      c.expect(',');
      ins.t2 = c.ident();
    } else if (c.accept_word("jmp")) {
      ins.k = IRInstr::K::Jmp;
      ins.t1 = c.ident();
    } else if (c.accept_word("va_start")) {
      ins.k = IRInstr::K::VaStart;
      ins.addr = operand(c);
    } else if (c.accept_word("va_copy")) {
      ins.k = IRInstr::K::VaCopy;
      ins.val = operand(c); // aq
      c.expect(',');
      ins.addr = operand(c); // ap
    } else if (c.accept_word("va_end")) {
      ins.k = IRInstr::K::VaEnd;
      ins.addr = operand(c);
    } else {
      c.fail("unknown instruction");
    }

    if (!c.eof())
      c.fail("trailing input after instruction");
    cur->body.push_back(std::move(ins));
  }
  if (cur)
    throw ParseError{lineno, 1, "unterminated procedure body"};

  // structural validation
  for (auto &p : prog.procs) {
    std::map<std::string, const IRInstr *> labels;
    for (auto &i : p.body) {
      if (labels.count(i.label))
        throw ParseError{i.line, 1, "duplicate label " + i.label};
      labels[i.label] = &i;
    }
    for (auto &i : p.body) {
      if (i.k == IRInstr::K::Dealloc) {
        auto it = labels.find(i.site);
        if (it == labels.end() || it->second->k != IRInstr::K::Alloc)
          throw ParseError{i.line, 1, "dealloc of unknown site " + i.site};
      }
      if (i.k == IRInstr::K::Branch &&
          (!labels.count(i.t1) || !labels.count(i.t2)))
        throw ParseError{i.line, 1, "branch to unknown label"};
      if (i.k == IRInstr::K::Jmp && !labels.count(i.t1))
        throw ParseError{i.line, 1, "jump to unknown label"};
    }
  }
  return prog;
}

} // namespace tval
