#include <cassert>

#include "ir/ast.h"

namespace tval {

namespace {

struct Expander {
  const IRProgram &prog;
  unsigned wordsz;
  int fresh = 0;

  std::string tmp() { return "__s" + std::to_string(++fresh); }

  IRInstr mk(IRInstr::K k, const std::string &label) {
    IRInstr i;
    i.k = k;
    i.label = label;
    return i;
  }
};

} // namespace

// va_start/va_arg/va_copy/va_end expand to the load/store/arith
// sequences over the va_list slot; sizes advance by word-rounded type
// size.
void expand_variadic_macros(IRProcedure &proc, const IRProgram &prog,
                            unsigned wordsz) {
  Expander ex{prog, wordsz};
  std::vector<IRInstr> out;
  for (auto &ins : proc.body) {
    auto sub = [&](int k) { return ins.label + ".s" + std::to_string(k); };
    switch (ins.k) {
    case IRInstr::K::VaStart: {
      IRInstr a = ex.mk(IRInstr::K::VaStartPtr, ins.label);
      a.target = ex.tmp();
      IRInstr st = ex.mk(IRInstr::K::Store, sub(1));
      st.ty = IRType::ptr();
      st.align = wordsz;
      st.val = IROperand::t(a.target);
      st.addr = ins.addr;
      out.push_back(a);
      out.push_back(st);
      break;
    }
    case IRInstr::K::VaArg: {
      if (!ins.ty)
        throw ParseError{ins.line, 1, "va_arg of unsized type"};
      IRInstr l1 = ex.mk(IRInstr::K::Load, ins.label);
      l1.ty = IRType::ptr();
      l1.align = wordsz;
      l1.addr = ins.addr;
      l1.target = ex.tmp();
      IRInstr l2 = ex.mk(IRInstr::K::Load, sub(1));
      l2.ty = ins.ty;
      l2.align = (unsigned)ins.ty->align(wordsz);
      l2.addr = IROperand::t(l1.target);
      l2.target = ins.target;
      IRInstr adv = ex.mk(IRInstr::K::Op, sub(2));
      adv.opname = "padd";
      adv.args = {IROperand::t(l1.target),
                  IROperand::c(roundup(ins.ty->size(wordsz), wordsz))};
      adv.target = ex.tmp();
      IRInstr st = ex.mk(IRInstr::K::Store, sub(3));
      st.ty = IRType::ptr();
      st.align = wordsz;
      st.val = IROperand::t(adv.target);
      st.addr = ins.addr;
      out.push_back(l1);
      out.push_back(l2);
      out.push_back(adv);
      out.push_back(st);
      break;
    }
    case IRInstr::K::VaCopy: {
      IRInstr l = ex.mk(IRInstr::K::Load, ins.label);
      l.ty = IRType::ptr();
      l.align = wordsz;
      l.addr = ins.addr;
      l.target = ex.tmp();
      IRInstr st = ex.mk(IRInstr::K::Store, sub(1));
      st.ty = IRType::ptr();
      st.align = wordsz;
      st.val = IROperand::t(l.target);
      st.addr = ins.val;
      out.push_back(l);
      out.push_back(st);
      break;
    }
    case IRInstr::K::VaEnd: {
      IRInstr st = ex.mk(IRInstr::K::Store, ins.label);
      st.ty = IRType::ptr();
      st.align = wordsz;
      st.val = IROperand::c(0);
      st.addr = ins.addr;
      out.push_back(st);
      break;
    }
    default:
      out.push_back(ins);
    }
  }
  proc.body = std::move(out);
}

// By-value procedure-call sugar: allocate a region per argument, store
// the value, pass the region addresses, deallocate in reverse order.
// Variadic actuals are packed into a calling-convention struct; with
// zero variadic actuals the variadic region is omitted entirely.
void expand_call_sugar(IRProcedure &proc, const IRProgram &prog,
                       unsigned wordsz) {
  Expander ex{prog, wordsz};
  std::vector<IRInstr> out;
  for (auto &ins : proc.body) {
    if (ins.k != IRInstr::K::CallSugar) {
      out.push_back(ins);
      continue;
    }
    const IRDeclare *decl = prog.find_declare(ins.callee);
    size_t nnamed = ins.typed_args.size();
    bool variadic = false;
    if (decl) {
      nnamed = decl->params.size();
      variadic = decl->variadic;
      if (ins.typed_args.size() < nnamed)
        throw ParseError{ins.line, 1, "too few arguments to " + ins.callee};
      if (!variadic && ins.typed_args.size() != nnamed)
        throw ParseError{ins.line, 1, "too many arguments to " + ins.callee};
    }

    int k = 0;
    auto sub = [&]() { return ins.label + ".s" + std::to_string(++k); };
    bool used_head = false;
    auto next_label = [&]() {
      if (!used_head) {
        used_head = true;
        return ins.label;
      }
      return sub();
    };

    std::vector<IROperand> argsP;
    std::vector<uint64_t> sizes;
    std::vector<std::string> arg_allocs; // site labels, in alloc order

    if (ins.ret_ty && ins.ret_ty->is_aggregate()) {
      if (!ins.target.empty())
        throw ParseError{ins.line, 1,
                         "aggregate return value must be read from the return "
                         "slot, not bound to a temp"};
      IRInstr a = ex.mk(IRInstr::K::Alloc, next_label());
      a.addr = IROperand::c(1);
      a.ty = ins.ret_ty;
      a.align = (unsigned)ins.ret_ty->align(wordsz);
      a.site = a.label;
      a.target = ex.tmp();
      argsP.push_back(IROperand::t(a.target));
      sizes.push_back(ins.ret_ty->size(wordsz));
      arg_allocs.push_back(a.label);
      out.push_back(a);
    }

    for (size_t i = 0; i < nnamed && i < ins.typed_args.size(); i++) {
      auto &[ty, opnd] = ins.typed_args[i];
      IRInstr a = ex.mk(IRInstr::K::Alloc, next_label());
      a.addr = IROperand::c(1);
      a.ty = ty;
      a.align = (unsigned)ty->align(wordsz);
      a.site = a.label;
      a.target = ex.tmp();
      IRInstr st = ex.mk(IRInstr::K::Store, sub());
      st.ty = ty;
      st.align = a.align;
      st.val = opnd;
      st.addr = IROperand::t(a.target);
      argsP.push_back(IROperand::t(a.target));
      sizes.push_back(ty->size(wordsz));
      arg_allocs.push_back(a.label);
      out.push_back(a);
      out.push_back(st);
    }

    if (variadic && ins.typed_args.size() > nnamed) {
      std::vector<IRTypeRef> kappas;
      for (size_t i = nnamed; i < ins.typed_args.size(); i++)
        kappas.push_back(ins.typed_args[i].first);
      IRTypeRef eta = IRType::strct(kappas);
      IRInstr a = ex.mk(IRInstr::K::Alloc, next_label());
      a.addr = IROperand::c(1);
      a.ty = eta;
      a.align = (unsigned)eta->align(wordsz);
      a.site = a.label;
      a.target = ex.tmp();
      out.push_back(a);
      argsP.push_back(IROperand::t(a.target));
      sizes.push_back(eta->size(wordsz));
      arg_allocs.push_back(a.label);

      std::string pv = a.target;
      for (size_t i = nnamed; i < ins.typed_args.size(); i++) {
        auto &[ty, opnd] = ins.typed_args[i];
        IRInstr st = ex.mk(IRInstr::K::Store, sub());
        st.ty = ty;
        st.align = (unsigned)ty->align(wordsz);
        st.val = opnd;
        st.addr = IROperand::t(pv);
        out.push_back(st);
        IRInstr adv = ex.mk(IRInstr::K::Op, sub());
        adv.opname = "padd";
        adv.args = {IROperand::t(pv),
                    IROperand::c(roundup(ty->size(wordsz), wordsz))};
        adv.target = ex.tmp();
        out.push_back(adv);
        pv = adv.target;
      }
    }

    IRInstr call = ex.mk(IRInstr::K::Call, next_label());
    call.callee = ins.callee;
    call.args = argsP;
    call.arg_sizes = sizes;
    if (ins.ret_ty && !ins.ret_ty->is_aggregate()) {
      call.ret_ty = ins.ret_ty;
      call.target = ins.target;
    }
    out.push_back(call);

    for (auto it = arg_allocs.rbegin(); it != arg_allocs.rend(); ++it) {
      IRInstr d = ex.mk(IRInstr::K::Dealloc, sub());
      d.site = *it;
      out.push_back(d);
    }
  }
  proc.body = std::move(out);
}

} // namespace tval
