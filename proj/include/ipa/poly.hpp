#pragma once

#include <string>
#include <vector>

#include "ipa/arena.hpp"
#include "ipa/field.hpp"

namespace ipa {

// little-endian coefficient vector; size = length
using Poly = std::vector<elem>;

std::string format_poly(const Field& F, const Poly& p);  // "q;c0,c1,..."
Poly parse_coeffs(const Field& F, const std::string& text);  // "c0,c1,..." (signed ints allowed)
Poly parse_poly(const std::string& text, u64* q_out);  // "q;c0,..." or "c0,..."

// Leaf loops on views. h is always written in place; f, g may be fake padded.
namespace kern {

void zero(const View& h);
void copy(const View& dst, const View& src);  // dst[i] = src[i], i < dst.size()
void add(const View& dst, const View& src, bool negate = false);  // dst[i] +-= src[i], i < min
void negate(const View& h);
void scale(const View& h, elem c);
bool all_zero(const View& h);

// h[k] +-= (f*g)[d+k] for k < |h|
void mul_acc(const View& h, const View& f, const View& g, std::size_t d = 0, bool negate = false);
// h[k] = (f*g)[d+k]
void mul_set(const View& h, const View& f, const View& g, std::size_t d = 0);
// sum f_i g_i, i < min sizes
elem dot(const View& f, const View& g);

}  // namespace kern

}  // namespace ipa
