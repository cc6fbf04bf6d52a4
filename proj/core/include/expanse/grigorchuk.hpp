#pragma once

#include <string>
#include <utility>

#include "expanse/cantor.hpp"

namespace expanse::grig {

// A word over {a,b,c,d}; the rightmost letter acts first. Empty means the identity.
using GrigWord = std::string;

enum class KElement { one, b, c, d };

bool is_grig_word(const GrigWord& w);
// Accepts "1" for the empty word.
GrigWord parse(const std::string& text);
std::string to_string(const GrigWord& w);

KElement k_mul(KElement x, KElement y);
char k_letter(KElement k);
KElement k_from_letter(char c);

Word act(const GrigWord& w, const Word& u);
// Free reduction modulo a^2 = 1 and the Klein relations among b, c, d.
GrigWord reduce(const GrigWord& w);
GrigWord inverse(const GrigWord& w);

struct Sections {
  char image;         // where the first symbol goes
  GrigWord section;   // the restriction below it
};
Sections section_at(const GrigWord& w, char symbol);
// Section along a whole finite word: w(u v) = w(u) section(w,u)(v).
GrigWord section_along(const GrigWord& w, const Word& u);

bool is_identity(const GrigWord& w);
bool equal(const GrigWord& w1, const GrigWord& w2);

}  // namespace expanse::grig
