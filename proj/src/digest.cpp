#include "cutspec/digest.hpp"

#include <openssl/evp.h>

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <memory>

#include "cutspec/errors.hpp"

namespace cutspec {

namespace {

class Sha256 {
public:
    Sha256() : ctx_(EVP_MD_CTX_new(), &EVP_MD_CTX_free) {
        if (!ctx_ || EVP_DigestInit_ex(ctx_.get(), EVP_sha256(), nullptr) != 1) {
            throw InternalError("SHA-256 initialisation failed");
        }
    }

    void update(const void* data, std::size_t len) {
        if (EVP_DigestUpdate(ctx_.get(), data, len) != 1) throw InternalError("SHA-256 update failed");
    }

    void update_u64(std::uint64_t v) {
        unsigned char b[8];
        for (int k = 0; k < 8; ++k) b[k] = static_cast<unsigned char>(v >> (8 * k));
        update(b, 8);
    }

    void update_double(double d) { update_u64(std::bit_cast<std::uint64_t>(d)); }

    std::string hex() {
        std::array<unsigned char, EVP_MAX_MD_SIZE> out{};
        unsigned int len = 0;
        if (EVP_DigestFinal_ex(ctx_.get(), out.data(), &len) != 1) throw InternalError("SHA-256 finalisation failed");
        static const char* digits = "0123456789abcdef";
        std::string s = "sha256:";
        for (unsigned int i = 0; i < len; ++i) {
            s.push_back(digits[out[i] >> 4]);
            s.push_back(digits[out[i] & 15]);
        }
        return s;
    }

private:
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx_;
};

}  // namespace

std::string matrix_digest(const Matrix& a) {
    Sha256 h;
    h.update_u64(a.rows());
    h.update_u64(a.cols());
    for (const Complex& z : a.entries()) {
        h.update_double(z.real());
        h.update_double(z.imag());
    }
    return h.hex();
}

std::string sha256_hex(const std::string& bytes) {
    Sha256 h;
    h.update(bytes.data(), bytes.size());
    return h.hex();
}

}  // namespace cutspec
