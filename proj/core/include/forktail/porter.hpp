#pragma once

#include <string>
#include <string_view>

namespace forktail {

/// One pass of the Porter suffix-stripping algorithm (steps 1a through 5b)
/// over a lowercase word. Words of length <= 2 are returned unchanged.
std::string porter_stem_once(std::string_view word);

/// Porter stemming iterated to a fixpoint, so stem(stem(x)) == stem(x)
/// holds for every input. A single pass is not a fixpoint for a handful
/// of words ("agreed" -> "agre" -> "agr"); iteration settles them.
std::string porter_stem(std::string_view word);

} // namespace forktail
