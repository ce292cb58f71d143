#pragma once

#include <string>
#include <vector>

// Words in the genus-2 surface group <a,b,c,d | a b A B c d C D> where a
// capital letter denotes the inverse of its lowercase partner. Conjugacy
// classes of cyclic words are canonicalized combinatorially: all pieces of
// the relator have length 1, so cyclic Dehn reduction plus half-relator
// swaps decide conjugacy.

namespace geocross {
namespace words {

inline constexpr const char* kLetters = "abcdABCD";
inline constexpr const char* kRelator = "abABcdCD";

char inverse_letter(char ch);
bool is_letter(char ch);
std::string inverse_word(const std::string& w);

std::string free_reduce(const std::string& w);
std::string cyclic_reduce(const std::string& w);

// all 16 cyclic rotations of the relator and its inverse
const std::vector<std::string>& relator_forms();

// cyclic word shortened via subwords of length >= 5 matching relator forms
std::string dehn_reduce(const std::string& w);

// equal-length variants obtained by replacing a half-relator (length-4)
// subword by the inverse of its complement; single step
std::vector<std::string> half_swaps(const std::string& w);

std::string min_rotation(const std::string& w);

// canonical conjugacy-class representative: lexicographic minimum over the
// swap closure, all rotations and the inverse word
std::string canonical_class(const std::string& w);

// smallest u with w = u^k cyclically; k = w.size()/u.size()
std::string primitive_root(const std::string& w);

} // namespace words
} // namespace geocross
