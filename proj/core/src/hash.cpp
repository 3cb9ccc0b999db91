#include "oat/hash.hpp"

#include <openssl/evp.h>

#include <array>
#include <stdexcept>

namespace oat {

namespace {

std::array<unsigned char, 32> sha256_digest(std::string_view data) {
    std::array<unsigned char, 32> digest{};
    unsigned int len = 0;
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (ctx == nullptr ||
        EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx, data.data(), data.size()) != 1 ||
        EVP_DigestFinal_ex(ctx, digest.data(), &len) != 1 || len != digest.size()) {
        EVP_MD_CTX_free(ctx);
        throw std::runtime_error("sha256 digest failed");
    }
    EVP_MD_CTX_free(ctx);
    return digest;
}

} // namespace

std::string sha256_hex(std::string_view data) {
    static const char hex[] = "0123456789abcdef";
    auto digest = sha256_digest(data);
    std::string out;
    out.reserve(64);
    for (unsigned char byte : digest) {
        out.push_back(hex[byte >> 4]);
        out.push_back(hex[byte & 0x0f]);
    }
    return out;
}

std::uint64_t sha256_seed(std::string_view data) {
    auto digest = sha256_digest(data);
    std::uint64_t value = 0;
    for (int i = 0; i < 8; ++i) {
        value = (value << 8) | digest[static_cast<std::size_t>(i)];
    }
    return value & ((std::uint64_t{1} << 53) - 1);
}

} // namespace oat
