#pragma once

#include <cstdint>
#include <string>

namespace fockcalc {

/// SHA-1 digest as lowercase hex.
std::string sha1_hex(const void* data, std::size_t len);
std::string sha1_hex(const std::string& s);

/// Hash of "blob <len>\0<content>", the form used for content addressing.
std::string blob_hash(const std::string& content);

}  // namespace fockcalc
