#include "altdiff/sbox_corpus.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "altdiff/error.hpp"

namespace altdiff::corpus {

namespace {

// Rows as printed in the optimal-class table, most significant bit first.
constexpr std::array<std::string_view, kOptimalClassCount> kOptimal = {
    "012D47F68BC93EA5", "012D47F68BE359AC", "012D47F68BE3AC59", "012D47F68C53AEB9",
    "012D47F68C9BAE53", "012D47F68CB9AE35", "012D47F68CB9AE53", "012D47F68CEBA935",
    "012D47F68E95AB3C", "012D47F68EB359AC", "012D47F68EB5A93C", "012D47F68EBA59C3",
    "012D47F68EBA93C5", "012D47F68EC95BA3", "012D47F68ECB395A", "012D47F68ECB93A5",
};

constexpr std::string_view kGamma = "0EB17C96D34F28A5";

// FIPS-197 forward s-box.
constexpr std::string_view kAes =
    "637c777bf26b6fc53001672bfed7ab76ca82c97dfa5947f0add4a2af9ca472c0"
    "b7fd9326363ff7cc34a5e5f171d8311504c723c31896059a071280e2eb27b275"
    "09832c1a1b6e5aa0523bd6b329e32f8453d100ed20fcb15b6acbbe394a4c58cf"
    "d0efaafb434d338545f9027f503c9fa851a3408f929d38f5bcb6da2110fff3d2"
    "cd0c13ec5f974417c4a77e3d645d197360814fdc222a908846eeb814de5e0bdb"
    "e0323a0a4906245cc2d3ac629195e479e7c8376d8dd54ea96c56f4ea657aae08"
    "ba78252e1ca6b4c6e8dd741f4bbd8b8a703eb5664803f60e613557b986c11d9e"
    "e1f8981169d98e949b1e87e9ce5528df8ca1890dbfe6426841992d0fb054bb16";

// RFC 3713 s-box SBOX1.
constexpr std::string_view kCamellia =
    "70822cecb327c0e5e4855735ea0cae4123ef6b934519a521ed0e4f4e1d6592bd"
    "86b8af8f7ceb1fce3e30dc5f5ec50b1aa6e139cad5475d3dd9015ad651566c4d"
    "8b0d9a66fbccb02d74122b20f0b18499df4ccbc2347e76056db7a931d11704d7"
    "14583a61de1b111c320f9c165318f222fe44cfb2c3b57a912408e8a860fc6950"
    "aad0a07da1896297545b1e95e0ff64d210c40048a3f775db8a03e6da093fdd94"
    "875c8302cd4a90337367f6f39d7fbfe2529bd826c837c63b81966f4b13be632e"
    "e979a78c9f6ebc8e29f5f9b62ffdb4597898066ae74671bad425ab4288a28dfa"
    "7207b955f8eeac0a36492a683c38f1a44028d37bbbc943c115e3adf477c7809e";

// RFC 7801 nonlinear bijection pi.
constexpr std::string_view kKuznyechik =
    "fceedd11cf6e3116fbc4fada23c5044de977f0db932e99ba1736f1bb14cd5fc1"
    "f918655ae25cef21811c3c428b018e4f058402aee36a8fa0060bed987fd4d31f"
    "eb342c51eac848abf22a68a2fd3aceccb5700e56080c7612bf7213479cb75d87"
    "15a19629107b9ac7f391786f9d9eb2b13275193dff358a7e6d54c680c3bd0d57"
    "dff524a93ea843c9d779d6f67c22b903e00fecde7a94b0bcdce828504e330a4a"
    "a79760731e0062441ab83882649f2641ad454692275e552f8ca3a57d69d5953b"
    "0758b34086ac1df730376be488d9e789e11b83494c3ff8fe8d53aa90cad88561"
    "207167a42d2b095bcb9b25d0bee56c5259a674d2e6f4b4c0d166afc2394b63b6";

const std::array<ddt::Sbox, kOptimalClassCount>& optimal_table() {
  static const auto table = [] {
    std::array<ddt::Sbox, kOptimalClassCount> t;
    for (int i = 0; i < kOptimalClassCount; ++i) t[static_cast<std::size_t>(i)] = ddt::Sbox::parse_hex(kOptimal[static_cast<std::size_t>(i)], 4);
    return t;
  }();
  return table;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

const ddt::Sbox& optimal_class(int index) {
  if (index < 0 || index >= kOptimalClassCount)
    throw Error(Errc::DimensionOutOfRange, "class index must lie in 0..15");
  return optimal_table()[static_cast<std::size_t>(index)];
}

const ddt::Sbox& gamma() {
  static const auto f = ddt::Sbox::parse_hex(kGamma, 4);
  return f;
}

const ddt::Sbox& aes() {
  static const auto f = ddt::Sbox::parse_hex(kAes, 8);
  return f;
}

const ddt::Sbox& camellia() {
  static const auto f = ddt::Sbox::parse_hex(kCamellia, 8);
  return f;
}

const ddt::Sbox& kuznyechik() {
  static const auto f = ddt::Sbox::parse_hex(kKuznyechik, 8);
  return f;
}

std::optional<ddt::Sbox> lookup(std::string_view name) {
  const std::string key = lower(name);
  if (key == "gamma") return gamma();
  if (key == "aes") return aes();
  if (key == "camellia") return camellia();
  if (key == "kuznyechik") return kuznyechik();
  if (key.size() >= 2 && key[0] == 'g') {
    int idx = 0;
    for (std::size_t i = 1; i < key.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(key[i]))) return std::nullopt;
      idx = idx * 10 + (key[i] - '0');
      if (idx >= kOptimalClassCount) return std::nullopt;
    }
    return optimal_class(idx);
  }
  return std::nullopt;
}

std::vector<std::string> names() {
  std::vector<std::string> out;
  for (int i = 0; i < kOptimalClassCount; ++i) out.push_back("G" + std::to_string(i));
  for (const char* n : {"gamma", "aes", "camellia", "kuznyechik"}) out.emplace_back(n);
  return out;
}

}  // namespace altdiff::corpus
