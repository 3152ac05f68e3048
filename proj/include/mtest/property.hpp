#pragma once

#include <functional>
#include <memory>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "mtest/generator.hpp"
#include "mtest/verdict.hpp"

namespace mtest {

/// A universally quantified property: a generator, a validity precondition
/// filtering generated inputs, a deterministic check, and a renderer for
/// counterexample display.
template <typename T>
class Property {
public:
    using ValidFn = std::function<bool(const T&)>;
    using CheckFn = std::function<Verdict(const T&)>;
    using ShowFn = std::function<std::string(const T&)>;

    Property(std::string name, Generator<T> generator, ValidFn valid, CheckFn check, ShowFn show)
        : name_(std::move(name)),
          generator_(std::move(generator)),
          valid_(std::make_shared<const ValidFn>(std::move(valid))),
          check_(std::make_shared<const CheckFn>(std::move(check))),
          show_(std::make_shared<const ShowFn>(std::move(show))) {}

    const std::string& name() const noexcept { return name_; }
    const Generator<T>& generator() const noexcept { return generator_; }

    bool valid(const T& value) const { return (*valid_)(value); }
    Verdict run_check(const T& value) const { return (*check_)(value); }
    std::string show(const T& value) const { return (*show_)(value); }

    /// Same property with a different check; generator, precondition and
    /// renderer keep their identity, which is what conjoin requires.
    Property with_check(std::string name, CheckFn check) const {
        Property out = *this;
        out.name_ = std::move(name);
        out.check_ = std::make_shared<const CheckFn>(std::move(check));
        return out;
    }

    Property renamed(std::string name) const {
        Property out = *this;
        out.name_ = std::move(name);
        return out;
    }

    bool shares_inputs_with(const Property& other) const noexcept {
        return generator_.same_instance(other.generator_) && valid_ == other.valid_;
    }

private:
    std::string name_;
    Generator<T> generator_;
    std::shared_ptr<const ValidFn> valid_;
    std::shared_ptr<const CheckFn> check_;
    std::shared_ptr<const ShowFn> show_;
};

template <typename T>
Property<T> make_property(std::string name, Generator<T> generator,
                          typename Property<T>::ValidFn valid,
                          typename Property<T>::CheckFn check,
                          typename Property<T>::ShowFn show) {
    return Property<T>(std::move(name), std::move(generator), std::move(valid), std::move(check),
                       std::move(show));
}

/// Conjunction of properties over one shared input. All components must have
/// been built over the same generator and validity predicate (shared
/// identity, see Property::with_check). An input passes iff every component
/// passes on it; the failure message names the first failing component.
template <typename T>
Property<T> conjoin(std::vector<Property<T>> props) {
    if (props.empty()) throw contract_error("conjoin: needs at least one property");
    for (std::size_t i = 1; i < props.size(); ++i) {
        if (!props[0].shares_inputs_with(props[i]))
            throw contract_error("conjoin: components must share generator and valid predicate");
    }
    std::string name = "conjoin(";
    for (std::size_t i = 0; i < props.size(); ++i) {
        if (i > 0) name += ",";
        name += props[i].name();
    }
    name += ")";
    auto shared = std::make_shared<const std::vector<Property<T>>>(std::move(props));
    const Property<T>& first = (*shared)[0];
    return first.with_check(std::move(name), [shared](const T& value) {
        for (const Property<T>& p : *shared) {
            Verdict v = p.run_check(value);
            if (v.is_discard()) return v;
            if (v.is_fail()) return Verdict::fail(p.name() + ": " + v.message());
        }
        return Verdict::pass();
    });
}

} // namespace mtest
