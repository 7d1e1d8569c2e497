#include "ir/types.h"

#include <cassert>
#include <sstream>

namespace tval {

uint64_t roundup(uint64_t v, uint64_t m) { return m ? (v + m - 1) / m * m : v; }

IRTypeRef IRType::i(unsigned bits) {
  auto t = std::make_shared<IRType>();
  t->k = K::Int;
  t->bits = bits;
  return t;
}

IRTypeRef IRType::ptr() {
  auto t = std::make_shared<IRType>();
  t->k = K::Ptr;
  return t;
}

IRTypeRef IRType::array(IRTypeRef elem, uint64_t n) {
  auto t = std::make_shared<IRType>();
  t->k = K::Array;
  t->elem = std::move(elem);
  t->count = n;
  return t;
}

IRTypeRef IRType::strct(std::vector<IRTypeRef> fields) {
  auto t = std::make_shared<IRType>();
  t->k = K::Struct;
  t->fields = std::move(fields);
  return t;
}

uint64_t IRType::size(unsigned wordsz) const {
  switch (k) {
  case K::Int:
    return bits / 8;
  case K::Ptr:
    return wordsz;
  case K::Array:
    return count * elem->size(wordsz);
  case K::Struct: {
    uint64_t s = 0;
    for (auto &f : fields)
      s += roundup(f->size(wordsz), wordsz);
    return s;
  }
  }
  return 0;
}

uint64_t IRType::align(unsigned wordsz) const {
  switch (k) {
  case K::Int:
    return std::min<uint64_t>(bits / 8, wordsz);
  case K::Ptr:
    return wordsz;
  case K::Array:
    return elem->align(wordsz);
  case K::Struct:
    return wordsz;
  }
  return 1;
}

uint64_t IRType::field_offset(unsigned idx, unsigned wordsz) const {
  assert(k == K::Struct && idx <= fields.size());
  uint64_t off = 0;
  for (unsigned i = 0; i < idx; i++)
    off += roundup(fields[i]->size(wordsz), wordsz);
  return off;
}

std::string IRType::str() const {
  std::ostringstream ss;
  switch (k) {
  case K::Int:
    ss << "i" << bits;
    break;
  case K::Ptr:
    ss << "ptr";
    break;
  case K::Array:
    ss << "[" << count << " x " << elem->str() << "]";
    break;
  case K::Struct: {
    ss << "{";
    for (size_t i = 0; i < fields.size(); i++) {
      if (i)
        ss << ",";
      ss << fields[i]->str();
    }
    ss << "}";
    break;
  }
  }
  return ss.str();
}

} // namespace tval
