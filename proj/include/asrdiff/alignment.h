#ifndef ASRDIFF_ALIGNMENT_H_
#define ASRDIFF_ALIGNMENT_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "asrdiff/ratio.h"

namespace asrdiff {

enum class EditKind { kMatch, kSubstitute, kDelete, kInsert };

const char* EditKindName(EditKind kind);

// One step of an alignment. ref_index is meaningful for match, substitute
// and delete; hyp_index for match, substitute and insert. Unused index is -1.
struct EditOp {
  EditKind kind;
  int ref_index = -1;
  int hyp_index = -1;
  friend bool operator==(const EditOp&, const EditOp&) = default;
};

struct WordAlignment {
  std::vector<EditOp> ops;
  int distance = 0;

  int Count(EditKind kind) const;
};

// Minimal Levenshtein alignment with a deterministic backtrace. Walking back
// from the end, a diagonal step (match or substitute) is preferred over a
// deletion and a deletion over an insertion whenever costs tie.
template <typename T>
WordAlignment Align(std::span<const T> ref, std::span<const T> hyp);

WordAlignment WordEditDistance(std::span<const std::string> ref, std::span<const std::string> hyp);

// Throws PreconditionError when ref is empty.
Ratio WordErrorRate(std::span<const std::string> ref, std::span<const std::string> hyp);

// Levenshtein distance only, over any equality-comparable symbols.
template <typename T>
int EditDistance(std::span<const T> a, std::span<const T> b);

}  // namespace asrdiff

#include "asrdiff/alignment_impl.h"

#endif  // ASRDIFF_ALIGNMENT_H_
