#pragma once

#include <array>
#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>

#include <openssl/sha.h>

#include "fuzzyvc/instance_io.hpp"

namespace fuzzyvc {

inline constexpr const char* kVersion = "1.0.0";

/** Lower-case hex SHA-256 of `bytes`. */
inline std::string sha256_hex(std::string_view bytes)
{
    std::array<unsigned char, SHA256_DIGEST_LENGTH> md{};
    SHA256(reinterpret_cast<const unsigned char*>(bytes.data()), bytes.size(), md.data());
    std::string out;
    out.reserve(2 * md.size());
    char buf[3];
    for (unsigned char c : md)
    {
        std::snprintf(buf, sizeof buf, "%02x", c);
        out += buf;
    }
    return out;
}

/**
 * One command's output. Reports are canonical JSON with sorted keys, so the
 * same command, inputs, seed and version always give the same bytes.
 */
struct RunReport
{
    std::string command;
    /** SHA-256 over the canonical bytes of every input, in order, newline separated. */
    std::string input_digest;
    Json parameters = Json::object();
    Json result = Json::object();
    std::uint64_t seed = 0;
    std::string version = kVersion;

    Json to_json() const
    {
        return Json{{"command", command},   {"input_digest", input_digest}, {"parameters", parameters},
                    {"result", result},     {"seed", seed},                 {"version", version}};
    }

    std::string text() const { return to_json().dump() + "\n"; }
};

inline std::string digest_of(const std::vector<InstanceFile>& inputs)
{
    std::string bytes;
    for (const auto& in : inputs)
        bytes += serialize_instance(in) + "\n";
    return sha256_hex(bytes);
}

}   // namespace fuzzyvc
