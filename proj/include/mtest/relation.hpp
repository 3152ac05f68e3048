#pragma once

#include <functional>
#include <memory>
#include <string>
#include <utility>

#include "mtest/property.hpp"

namespace mtest {

/// A metamorphic relation: a source-input generator, an input transformation
/// producing the follow-up case, and an output relation over two executions
/// of the subject. `subject_name` is an identity token; relations may only
/// be composed when they run the same subject over the same source space.
template <typename I, typename O>
class MetamorphicRelation {
public:
    using FollowupFn = std::function<I(const I&)>;
    using RelateFn = std::function<bool(const O&, const O&)>;
    using SubjectFn = std::function<O(const I&)>;
    using ValidFn = std::function<bool(const I&)>;
    using ShowFn = std::function<std::string(const I&)>;

    MetamorphicRelation(std::string name, Generator<I> source_gen, FollowupFn followup,
                        RelateFn relate, SubjectFn subject, std::string subject_name,
                        ValidFn valid, ShowFn show)
        : name_(std::move(name)),
          source_gen_(std::move(source_gen)),
          followup_(std::move(followup)),
          relate_(std::move(relate)),
          subject_(std::move(subject)),
          subject_name_(std::move(subject_name)),
          valid_(std::move(valid)),
          show_(std::move(show)) {}

    const std::string& name() const noexcept { return name_; }
    const Generator<I>& source_gen() const noexcept { return source_gen_; }
    const std::string& subject_name() const noexcept { return subject_name_; }

    I followup(const I& input) const { return followup_(input); }
    bool relate(const O& a, const O& b) const { return relate_(a, b); }
    O subject(const I& input) const { return subject_(input); }
    const ValidFn& valid() const noexcept { return valid_; }
    const ShowFn& show() const noexcept { return show_; }

private:
    std::string name_;
    Generator<I> source_gen_;
    FollowupFn followup_;
    RelateFn relate_;
    SubjectFn subject_;
    std::string subject_name_;
    ValidFn valid_;
    ShowFn show_;
};

/// Compiles a relation into a checkable property: run the subject on the
/// source input and on its follow-up, pass iff the outputs are related.
template <typename I, typename O>
Property<I> mr_to_property(const MetamorphicRelation<I, O>& mr) {
    auto shared = std::make_shared<const MetamorphicRelation<I, O>>(mr);
    return Property<I>(
        mr.name(), mr.source_gen(), mr.valid(),
        [shared](const I& input) {
            const O source_out = shared->subject(input);
            const I followup_in = shared->followup(input);
            const O followup_out = shared->subject(followup_in);
            if (shared->relate(source_out, followup_out)) return Verdict::pass();
            return Verdict::fail("relation violated; source=" + shared->show()(input) +
                                 " followup=" + shared->show()(followup_in));
        },
        mr.show());
}

/// Chains two relations over the same subject and source space:
/// followup = second after first, relation taken from the first. Both
/// relations are assumed to be equivalences; the composed name records that.
template <typename I, typename O>
MetamorphicRelation<I, O> compose(const MetamorphicRelation<I, O>& first,
                                  const MetamorphicRelation<I, O>& second) {
    if (first.subject_name() != second.subject_name())
        throw contract_error("compose: relations must share a subject");
    if (!first.source_gen().same_instance(second.source_gen()))
        throw contract_error("compose: relations must share a source generator");
    auto f1 = std::make_shared<const MetamorphicRelation<I, O>>(first);
    auto f2 = std::make_shared<const MetamorphicRelation<I, O>>(second);
    return MetamorphicRelation<I, O>(
        "compose(" + first.name() + "," + second.name() + ")[equivalences-assumed]",
        first.source_gen(),
        [f1, f2](const I& input) { return f2->followup(f1->followup(input)); },
        [f1](const O& a, const O& b) { return f1->relate(a, b); },
        [f1](const I& input) { return f1->subject(input); }, first.subject_name(), first.valid(),
        first.show());
}

} // namespace mtest
