#include <cctype>
#include <sstream>

#include "asmf/ast.h"
#include "core/state.h"
#include "ir/types.h"

namespace tval {

const char *kAsmRegs[8] = {"eax", "ecx", "edx", "ebx",
                           "esp", "ebp", "esi", "edi"};

const AsmProcedure *AsmProgram::find_proc(const std::string &n) const {
  for (auto &p : procs)
    if (p.name == n)
      return &p;
  return nullptr;
}

namespace {

bool is_reg(const std::string &s) {
  for (auto *r : kAsmRegs)
    if (s == r)
      return true;
  return false;
}

struct Cur {
  std::string s;
  size_t pos = 0;
  int line = 0;
  unsigned width;

  [[noreturn]] void fail(const std::string &m) const {
    throw ParseError{line, (int)pos + 1, m};
  }
  void ws() {
    while (pos < s.size() && isspace((uint8_t)s[pos]))
      pos++;
  }
  bool eof() {
    ws();
    return pos >= s.size();
  }
  bool peek(const std::string &t) {
    ws();
    return s.compare(pos, t.size(), t) == 0;
  }
  bool accept(const std::string &t) {
    if (peek(t)) {
      pos += t.size();
      return true;
    }
    return false;
  }
  void expect(const std::string &t) {
    if (!accept(t))
      fail("expected '" + t + "'");
  }
  bool accept_word(const std::string &w) {
    ws();
    if (s.compare(pos, w.size(), w) == 0) {
      size_t e = pos + w.size();
      if (e >= s.size() || !(isalnum((uint8_t)s[e]) || s[e] == '_')) {
        pos = e;
        return true;
      }
    }
    return false;
  }
  std::string ident() {
    ws();
    size_t b = pos;
    while (pos < s.size() && (isalnum((uint8_t)s[pos]) || s[pos] == '_' ||
                              s[pos] == '.'))
      pos++;
    if (b == pos)
      fail("expected identifier");
    return s.substr(b, pos - b);
  }
  uint64_t number() {
    ws();
    if (pos >= s.size() || !isdigit((uint8_t)s[pos]))
      fail("expected number");
    char *end = nullptr;
    uint64_t v = strtoull(s.c_str() + pos, &end, 0);
    pos = end - s.c_str();
    return v;
  }

  // precedence: | < ^ < & < shifts < +- < */ < unary < atom
  ExprRef expr() { return e_or(); }
  ExprRef e_or() {
    ExprRef a = e_xor();
    while (true) {
      ws();
      if (pos < s.size() && s[pos] == '|' &&
          (pos + 1 >= s.size() || s[pos + 1] != '|')) {
        pos++;
        a = eb::binary(Op::Or, a, e_xor());
      } else
        return a;
    }
  }
  ExprRef e_xor() {
    ExprRef a = e_and();
    while (accept("^"))
      a = eb::binary(Op::Xor, a, e_and());
    return a;
  }
  ExprRef e_and() {
    ExprRef a = e_shift();
    while (true) {
      ws();
      if (pos < s.size() && s[pos] == '&' &&
          (pos + 1 >= s.size() || s[pos + 1] != '&')) {
        pos++;
        a = eb::binary(Op::And, a, e_shift());
      } else
        return a;
    }
  }
  ExprRef e_shift() {
    ExprRef a = e_add();
    while (true) {
      if (accept(">>s"))
        a = eb::binary(Op::AShr, a, e_add());
      else if (accept("<<"))
        a = eb::binary(Op::Shl, a, e_add());
      else if (peek(">>") && !peek(">>s")) {
        accept(">>");
        a = eb::binary(Op::LShr, a, e_add());
      } else
        return a;
    }
  }
  ExprRef e_add() {
    ExprRef a = e_mul();
    while (true) {
      ws();
      if (accept("+"))
        a = eb::add(a, e_mul());
      else if (pos < s.size() && s[pos] == '-' ) {
        pos++;
        a = eb::sub(a, e_mul());
      } else
        return a;
    }
  }
  ExprRef e_mul() {
    ExprRef a = e_unary();
    while (true) {
      if (accept("*"))
        a = eb::mul(a, e_unary());
      else if (accept("/s"))
        a = eb::binary(Op::SDiv, a, e_unary());
      else if (accept("/u") || accept("/"))
        a = eb::binary(Op::UDiv, a, e_unary());
      else if (accept("%u") || accept("%"))
        a = eb::binary(Op::URem, a, e_unary());
      else
        return a;
    }
  }
  ExprRef e_unary() {
    ws();
    if (accept("-"))
      return eb::unary(Op::Neg, e_unary());
    if (accept("~"))
      return eb::unary(Op::Not, e_unary());
    return atom();
  }
  ExprRef atom() {
    ws();
    if (accept("(")) {
      ExprRef a = expr();
      expect(")");
      return a;
    }
    if (pos < s.size() && s[pos] == '$') {
      pos++;
      std::string n = ident();
      // placeholder variable for a symbol address; the lowering
      // substitutes the region's lower bound or fixed address
      return eb::var("$" + n, Type::bv(width));
    }
    if (pos < s.size() && isdigit((uint8_t)s[pos]))
      return eb::bv(width, number());
    std::string id = ident();
    if (is_reg(id))
      return eb::var(names::reg(id), Type::bv(width));
    fail("unknown operand '" + id + "'");
  }

  ExprRef cond() {
    ExprRef a = expr();
    ws();
    struct Rel {
      const char *tok;
      Op op;
      bool swap;
    };
    static const Rel rels[] = {
        {"==", Op::Eq, false},  {"!=", Op::Eq, false}, {"<=s", Op::Sle, false},
        {"<s", Op::Slt, false}, {">=s", Op::Sge, false}, {">s", Op::Sgt, false},
        {"<=u", Op::Ule, false}, {"<u", Op::Ult, false}, {">=u", Op::Uge, false},
        {">u", Op::Ugt, false},
    };
    for (auto &r : rels) {
      if (accept(r.tok)) {
        ExprRef b = expr();
        ExprRef c = r.op == Op::Eq ? eb::eq(a, b) : eb::binary(r.op, a, b);
        if (std::string(r.tok) == "!=")
          c = eb::lnot(c);
        return c;
      }
    }
    fail("expected relational operator");
  }
};

} // namespace

AsmProgram parse_asm(const std::string &text, unsigned width) {
  AsmProgram prog;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  AsmProcedure *cur = nullptr;
  std::string last_label;
  int sub = 0;
  bool in_data = false;

  auto strip = [](std::string s) {
    size_t h = s.find('#');
    if (h != std::string::npos)
      s = s.substr(0, h);
    h = s.find(';');
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
    std::string lt = strip(raw);
    if (lt.empty())
      continue;
    Cur c{lt, 0, lineno, width};

    if (c.accept_word(".data")) {
      in_data = true;
      continue;
    }
    if (c.accept_word(".text")) {
      in_data = false;
      continue;
    }
    if (in_data) {
      if (!c.accept_word("fglob"))
        c.fail("expected fglob in .data");
      AsmSymbol sym;
      sym.name = c.ident();
      while (!c.eof()) {
        if (c.accept_word("addr"))
          sym.addr = c.number();
        else if (c.accept_word("size"))
          sym.size = c.number();
        else if (c.accept_word("align"))
          sym.align = (unsigned)c.number();
        else if (c.accept_word("ro"))
          sym.read_only = true;
        else if (c.accept_word("init")) {
          while (!c.eof())
            sym.init.push_back((uint8_t)c.number());
        } else
          c.fail("bad symbol attribute");
      }
      prog.symbols.push_back(std::move(sym));
      continue;
    }

    if (c.accept_word("def")) {
      AsmProcedure p;
      std::string rt_;
      if (!c.accept_word("void")) {
        std::string t = c.ident();
        if (t == "ptr")
          p.ret_size = width / 8;
        else if (t[0] == 'i')
          p.ret_size = atoi(t.c_str() + 1) / 8;
        else
          c.fail("bad return type");
      }
      c.expect("@");
      p.name = c.ident();
      c.expect("(");
      if (!c.peek(")")) {
        do {
          c.ws();
          if (c.accept("...")) {
            p.variadic = true;
            break;
          }
          std::string t = c.ident();
          if (t == "ptr")
            p.param_sizes.push_back(width / 8);
          else if (t[0] == 'i')
            p.param_sizes.push_back(atoi(t.c_str() + 1) / 8);
          else
            c.fail("bad param type");
        } while (c.accept(","));
      }
      c.expect(")");
      prog.procs.push_back(std::move(p));
      cur = &prog.procs.back();
      last_label.clear();
      sub = 0;
      continue;
    }

    if (!cur)
      c.fail("instruction outside a procedure");

    AsmInstr ins;
    ins.line = lineno;
    {
      size_t save = c.pos;
      c.ws();
      size_t b = c.pos;
      while (c.pos < c.s.size() &&
             (isalnum((uint8_t)c.s[c.pos]) || c.s[c.pos] == '_'))
        c.pos++;
      std::string maybe = c.s.substr(b, c.pos - b);
      c.ws();
      if (!maybe.empty() && c.pos < c.s.size() && c.s[c.pos] == ':' &&
          !is_reg(maybe)) {
        c.pos++;
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

    if (c.accept_word("push")) {
      ins.k = AsmInstr::K::Push;
      c.expect("{");
      do
        ins.regs.push_back(c.ident());
      while (c.accept(","));
      c.expect("}");
    } else if (c.accept_word("pop")) {
      ins.k = AsmInstr::K::Pop;
      c.expect("{");
      do
        ins.regs.push_back(c.ident());
      while (c.accept(","));
      c.expect("}");
    } else if (c.accept_word("cmp") || c.accept_word("test")) {
      ins.k = AsmInstr::K::Cmp;
      ins.expr = c.expr();
      c.expect(",");
      ins.val = c.expr();
    } else if (c.accept_word("if")) {
      ins.k = AsmInstr::K::CondJmp;
      c.expect("(");
      ins.expr = c.cond();
      c.expect(")");
      if (!c.accept_word("jmp"))
        c.fail("expected jmp after condition");
      ins.target = c.ident();
    } else if (c.accept_word("jz") || c.accept_word("jnz") ||
               c.accept_word("jl") || c.accept_word("jle") ||
               c.accept_word("jg") || c.accept_word("jge") ||
               c.accept_word("jb") || c.accept_word("jbe") ||
               c.accept_word("ja") || c.accept_word("jae")) {
      // flag-based conditional jump; decode from the consumed word
      size_t e = c.pos;
      size_t b = e;
      while (b > 0 && !isspace((uint8_t)c.s[b - 1]))
        b--;
      std::string cc = c.s.substr(b, e - b);
      ins.k = AsmInstr::K::CondJmp;
      auto flag = [&](const char *f) { return eb::var(names::reg(f), Type::bv(1)); };
      auto isone = [&](ExprRef f) { return eb::eq(f, eb::bv(1, 1)); };
      ExprRef z = isone(flag("zf")), sl = isone(flag("slf")), ul = isone(flag("ulf"));
      if (cc == "jz") ins.expr = z;
      else if (cc == "jnz") ins.expr = eb::lnot(z);
      else if (cc == "jl") ins.expr = sl;
      else if (cc == "jle") ins.expr = eb::lor({sl, z});
      else if (cc == "jg") ins.expr = eb::lnot(eb::lor({sl, z}));
      else if (cc == "jge") ins.expr = eb::lnot(sl);
      else if (cc == "jb") ins.expr = ul;
      else if (cc == "jbe") ins.expr = eb::lor({ul, z});
      else if (cc == "ja") ins.expr = eb::lnot(eb::lor({ul, z}));
      else ins.expr = eb::lnot(ul); // jae
      ins.target = c.ident();
    } else if (c.accept_word("jmp")) {
      ins.k = AsmInstr::K::Jmp;
      ins.target = c.ident();
    } else if (c.accept_word("call")) {
      ins.k = AsmInstr::K::Call;
      c.expect("@");
      ins.target = c.ident();
    } else if (c.accept_word("ret")) {
      ins.k = AsmInstr::K::Ret;
    } else if (c.peek("mem_")) {
      c.accept("mem_");
      ins.k = AsmInstr::K::Store;
      ins.w = (unsigned)c.number();
      ins.align = ins.w;
      if (c.accept("a"))
        ins.align = (unsigned)c.number();
      c.expect("[");
      ins.expr = c.expr();
      c.expect("]");
      c.expect("=");
      ins.val = c.expr();
    } else {
      std::string r = c.ident();
      if (!is_reg(r))
        c.fail("expected register, got '" + r + "'");
      c.expect("=");
      if (c.peek("mem_")) {
        c.accept("mem_");
        ins.k = AsmInstr::K::Load;
        ins.reg = r;
        ins.w = (unsigned)c.number();
        ins.align = ins.w;
        if (c.accept("a"))
          ins.align = (unsigned)c.number();
        c.expect("[");
        ins.expr = c.expr();
        c.expect("]");
      } else {
        ins.k = AsmInstr::K::RegAssign;
        ins.reg = r;
        ins.expr = c.expr();
      }
    }
    if (!c.eof())
      c.fail("trailing input");
    cur->body.push_back(std::move(ins));
  }

  // validate labels and the symbol table
  for (auto &p : prog.procs) {
    std::map<std::string, int> labels;
    for (auto &i : p.body) {
      if (labels.count(i.label))
        throw ParseError{i.line, 1, "duplicate label " + i.label};
      labels[i.label] = 1;
    }
    for (auto &i : p.body)
      if ((i.k == AsmInstr::K::Jmp || i.k == AsmInstr::K::CondJmp) &&
          !labels.count(i.target))
        throw ParseError{i.line, 1, "jump to unknown label " + i.target};
  }
  for (size_t i = 0; i < prog.symbols.size(); i++) {
    const AsmSymbol &a = prog.symbols[i];
    if (a.size == 0 || a.addr == 0)
      throw ParseError{0, 0, "symbol " + a.name + " needs addr and size"};
    if (a.align > 1 && a.addr % a.align != 0)
      throw ParseError{0, 0, "symbol " + a.name + " is misaligned"};
    for (size_t j = i + 1; j < prog.symbols.size(); j++) {
      const AsmSymbol &b = prog.symbols[j];
      if (a.addr <= b.addr + b.size - 1 && b.addr <= a.addr + a.size - 1)
        throw ParseError{0, 0,
                         "symbols " + a.name + " and " + b.name + " overlap"};
    }
  }
  return prog;
}

} // namespace tval
