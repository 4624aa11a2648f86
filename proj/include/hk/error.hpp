#pragma once

#include <stdexcept>
#include <string>

namespace hk {

// Malformed input or violated precondition. `pointer` is a JSON pointer when
// the problem came from a parsed document.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& msg, std::string pointer = {})
        : std::runtime_error(msg), pointer_(std::move(pointer)) {}
    const std::string& pointer() const { return pointer_; }

private:
    std::string pointer_;
};

// A computation would exceed the configured size budget.
class BudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The input is well formed but the requested computation is not defined for it
// (e.g. a coefficient ring that does not invert a stabilizer order).
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Size budget shared by all enumerating algorithms. HK_BUDGET overrides it.
std::size_t budget();
void check_budget(std::size_t requested, const char* what);

}  // namespace hk
