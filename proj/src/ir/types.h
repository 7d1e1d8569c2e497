#pragma once

#include <memory>
#include <string>
#include <vector>

namespace tval {

// IR-side value types: fixed-width ints, pointers (one machine word),
// fixed arrays and calling-convention structs whose fields occupy
// word-rounded slots.
struct IRType;
using IRTypeRef = std::shared_ptr<const IRType>;

struct IRType {
  enum class K { Int, Ptr, Array, Struct } k = K::Int;
  unsigned bits = 32;            // Int
  IRTypeRef elem;                // Array
  uint64_t count = 0;            // Array
  std::vector<IRTypeRef> fields; // Struct

  static IRTypeRef i(unsigned bits);
  static IRTypeRef ptr();
  static IRTypeRef array(IRTypeRef elem, uint64_t n);
  static IRTypeRef strct(std::vector<IRTypeRef> fields);

  // sz / alignment under word size W = d/8 bytes
  uint64_t size(unsigned wordsz) const;
  uint64_t align(unsigned wordsz) const;
  uint64_t field_offset(unsigned idx, unsigned wordsz) const; // cc layout
  std::string str() const;
  bool is_aggregate() const { return k == K::Array || k == K::Struct; }
};

uint64_t roundup(uint64_t v, uint64_t m);

} // namespace tval
