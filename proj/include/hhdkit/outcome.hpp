#pragma once

#include <optional>
#include <string>
#include <utility>

namespace hhdkit {

/// Value-or-declared-failure result for operations where nonexistence is a
/// legitimate answer rather than an error.
template <typename T>
struct Outcome {
    std::optional<T> value;
    std::string error;

    bool ok() const { return value.has_value(); }
    const T& operator*() const { return *value; }
    T& operator*() { return *value; }
    const T* operator->() const { return &*value; }

    static Outcome success(T v) { return Outcome{std::move(v), {}}; }
    static Outcome failure(std::string why) { return Outcome{std::nullopt, std::move(why)}; }
};

}  // namespace hhdkit
