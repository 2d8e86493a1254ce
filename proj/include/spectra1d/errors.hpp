#pragma once

#include <stdexcept>
#include <string>

namespace spectra1d {

// Domain error carrying the name of the module that raised it, so the CLI
// can surface "error [module]: message" and map to exit code 1.
class Error : public std::runtime_error {
public:
    Error(std::string module, const std::string& message)
        : std::runtime_error("[" + module + "] " + message), module_(std::move(module)) {}

    const std::string& module() const { return module_; }

private:
    std::string module_;
};

} // namespace spectra1d
