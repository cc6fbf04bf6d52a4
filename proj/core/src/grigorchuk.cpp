#include "expanse/grigorchuk.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace expanse::grig {

bool is_grig_word(const GrigWord& w) {
  return std::all_of(w.begin(), w.end(), [](char c) { return c >= 'a' && c <= 'd'; });
}

GrigWord parse(const std::string& text) {
  GrigWord out;
  for (char c : text) {
    if (c == '1') continue;
    if (c < 'a' || c > 'd') throw std::invalid_argument("not a Grigorchuk word: '" + text + "'");
    out.push_back(c);
  }
  return out;
}

std::string to_string(const GrigWord& w) { return w.empty() ? std::string("1") : w; }

char k_letter(KElement k) {
  switch (k) {
    case KElement::b: return 'b';
    case KElement::c: return 'c';
    case KElement::d: return 'd';
    default: return '1';
  }
}

KElement k_from_letter(char c) {
  switch (c) {
    case 'b': return KElement::b;
    case 'c': return KElement::c;
    case 'd': return KElement::d;
    case '1': return KElement::one;
    default: throw std::invalid_argument(std::string("not an element of K: ") + c);
  }
}

KElement k_mul(KElement x, KElement y) {
  // Bitwise: b = 01, c = 10, d = 11 realizes the Klein table with bc = d.
  int bits = static_cast<int>(x) ^ static_cast<int>(y);
  return static_cast<KElement>(bits);
}

namespace {

// One step of the wreath recursion: the state below `symbol`.
char next_state(char state, char symbol) {
  switch (state) {
    case 'b': return symbol == '0' ? 'a' : 'c';
    case 'c': return symbol == '0' ? 'a' : 'd';
    case 'd': return symbol == '0' ? '1' : 'b';
    default: return '1';
  }
}

void act_letter(char letter, Word& u) {
  char state = letter;
  for (std::size_t i = 0; i < u.size() && state != '1'; ++i) {
    if (state == 'a') {
      u[i] = u[i] == '0' ? '1' : '0';
      return;
    }
    state = next_state(state, u[i]);
  }
}

}  // namespace

Word act(const GrigWord& w, const Word& u) {
  Word out = u;
  for (auto it = w.rbegin(); it != w.rend(); ++it) act_letter(*it, out);
  return out;
}

GrigWord reduce(const GrigWord& w) {
  GrigWord stack;
  for (char c : w) {
    if (c == 'a') {
      if (!stack.empty() && stack.back() == 'a') stack.pop_back();
      else stack.push_back('a');
      continue;
    }
    if (!stack.empty() && stack.back() != 'a') {
      KElement k = k_mul(k_from_letter(stack.back()), k_from_letter(c));
      stack.pop_back();
      if (k != KElement::one) stack.push_back(k_letter(k));
    } else {
      stack.push_back(c);
    }
  }
  return stack;
}

GrigWord inverse(const GrigWord& w) { return GrigWord(w.rbegin(), w.rend()); }

Sections section_at(const GrigWord& w, char symbol) {
  char cur = symbol;
  GrigWord section;
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    char l = *it;
    if (l == 'a') {
      cur = cur == '0' ? '1' : '0';
      continue;
    }
    char s = next_state(l, cur);
    if (s != '1') section.insert(section.begin(), s);
  }
  return {cur, section};
}

GrigWord section_along(const GrigWord& w, const Word& u) {
  GrigWord cur = w;
  for (char c : u) cur = reduce(section_at(cur, c).section);
  return cur;
}

namespace {

std::mutex memo_mutex;
std::unordered_map<GrigWord, bool> memo;

bool identity_reduced(const GrigWord& r) {
  if (r.empty()) return true;
  if (r.size() == 1) return false;
  if (std::count(r.begin(), r.end(), 'a') % 2 == 1) return false;
  {
    std::lock_guard<std::mutex> lock(memo_mutex);
    auto it = memo.find(r);
    if (it != memo.end()) return it->second;
  }
  GrigWord left = reduce(section_at(r, '0').section);
  bool result = identity_reduced(left);
  if (result) result = identity_reduced(reduce(section_at(r, '1').section));
  std::lock_guard<std::mutex> lock(memo_mutex);
  memo.emplace(r, result);
  return result;
}

}  // namespace

bool is_identity(const GrigWord& w) {
  if (!is_grig_word(w)) throw std::invalid_argument("not a Grigorchuk word: '" + w + "'");
  return identity_reduced(reduce(w));
}

bool equal(const GrigWord& w1, const GrigWord& w2) { return is_identity(w1 + inverse(w2)); }

}  // namespace expanse::grig
