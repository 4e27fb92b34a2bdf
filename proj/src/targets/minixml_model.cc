// Copyright 2026 The paramfuzz Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Semantic stage of the mini XML target: a small build-file model in the
// spirit of Ant. The document is validated against a fixed schema, turned
// into a Project (properties, targets, paths, id references) and then the
// default target's dependency closure is planned and executed.
//
// Known defects, kept on purpose as planted bugs:
//   * <augment> without an id dereferences a null reference.
//   * A second <description> rebinds the singleton and trips an invariant
//     check when the project is finalized.
//   * The cycle check ignores self-dependencies, so a target that depends
//     on itself recurses until the depth guard fires.

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "paramfuzz/target.h"
#include "targets/faults.h"
#include "targets/instrument.h"
#include "targets/minixml_internal.h"

namespace paramfuzz::minixml {
namespace {

constexpr PointId kRegionBase = kSemanticBase;
constexpr int kMaxPlanDepth = 64;
constexpr int kMaxAntcallDepth = 8;

[[noreturn]] void Reject(const std::string& why) {
  throw SemanticRejection("BuildException: " + why);
}

std::vector<std::string> SplitList(std::string_view list) {
  std::vector<std::string> out;
  size_t start = 0;
  for (;;) {
    size_t comma = list.find(',', start);
    std::string_view item =
        list.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

bool IsBlank(std::string_view text) {
  return text.find_first_not_of(" \t\r\n") == std::string_view::npos;
}

struct Task {
  const Element* element;
};

struct BuildTarget {
  std::string name;
  std::vector<std::string> depends;
  const std::string* if_property = nullptr;
  const std::string* unless_property = nullptr;
  std::vector<Task> tasks;
};

struct PathModel {
  std::vector<std::string> entries;
  std::string refid;
};

// Schema checks. Each element kind validates its own attributes and
// children, rejecting anything it does not know.
class Validator {
 public:
  explicit Validator(CoverageRecorder& cov) : cov_(cov) {}

  void Project(const Element& e) {
    if (PF_BRANCH(e.name != "project")) Reject("root element must be <project>, got <" + e.name + ">");
    Attributes(e, {"name", "default", "basedir"});
    for (const Element& child : e.children) {
      if (PF_BRANCH(child.name == "description")) {
        Description(child);
      } else if (PF_BRANCH(child.name == "property")) {
        Property(child);
      } else if (PF_BRANCH(child.name == "target")) {
        Target(child);
      } else if (PF_BRANCH(child.name == "path")) {
        Path(child);
      } else if (PF_BRANCH(child.name == "augment")) {
        Augment(child);
      } else {
        Reject("unexpected element <" + child.name + "> in <project>");
      }
    }
  }

 private:
  void Attributes(const Element& e, std::initializer_list<std::string_view> allowed) {
    for (const auto& [key, value] : e.attributes) {
      bool known = false;
      for (std::string_view a : allowed) known = known || key == a;
      if (PF_BRANCH(!known)) Reject("<" + e.name + "> doesn't support the \"" + key + "\" attribute");
    }
  }

  void Require(const Element& e, std::string_view key) {
    if (PF_BRANCH(e.Attribute(key) == nullptr)) {
      Reject("<" + e.name + "> requires attribute \"" + std::string(key) + "\"");
    }
  }

  void NoChildren(const Element& e) {
    if (PF_BRANCH(!e.children.empty())) Reject("<" + e.name + "> doesn't support nested elements");
  }

  void Description(const Element& e) {
    // Repeated descriptions are legal; the model binds each in turn.
    PF_BRANCH(description_seen_);
    description_seen_ = true;
    Attributes(e, {});
    NoChildren(e);
  }

  void Property(const Element& e) {
    Attributes(e, {"name", "value", "location", "refid"});
    Require(e, "name");
    NoChildren(e);
    const int sources = (e.Attribute("value") ? 1 : 0) + (e.Attribute("location") ? 1 : 0) +
                        (e.Attribute("refid") ? 1 : 0);
    if (PF_BRANCH(sources == 0 && IsBlank(e.text))) Reject("property needs a value");
    if (PF_BRANCH(sources > 1)) Reject("property takes only one of value, location, refid");
  }

  void Target(const Element& e) {
    Attributes(e, {"name", "depends", "if", "unless", "description"});
    Require(e, "name");
    for (const Element& task : e.children) {
      if (PF_BRANCH(task.name == "echo")) {
        Attributes(task, {"message"});
        NoChildren(task);
      } else if (PF_BRANCH(task.name == "property")) {
        Property(task);
      } else if (PF_BRANCH(task.name == "antcall")) {
        Attributes(task, {"target"});
        Require(task, "target");
        for (const Element& param : task.children) {
          if (PF_BRANCH(param.name != "param")) Reject("unexpected <" + param.name + "> in <antcall>");
          Attributes(param, {"name", "value"});
          Require(param, "name");
          Require(param, "value");
          NoChildren(param);
        }
      } else if (PF_BRANCH(task.name == "mkdir")) {
        Attributes(task, {"dir"});
        Require(task, "dir");
        NoChildren(task);
      } else {
        Reject("problem: failed to create task or type " + task.name);
      }
    }
  }

  void Path(const Element& e) {
    Attributes(e, {"id", "refid", "location"});
    if (PF_BRANCH(e.Attribute("refid") && !e.children.empty())) {
      Reject("you must not specify nested elements when using refid");
    }
    for (const Element& entry : e.children) {
      if (PF_BRANCH(entry.name != "pathelement")) Reject("unexpected <" + entry.name + "> in <path>");
      Attributes(entry, {"location", "path"});
      NoChildren(entry);
      if (PF_BRANCH(!entry.Attribute("location") && !entry.Attribute("path"))) {
        Reject("<pathelement> needs location or path");
      }
    }
  }

  void Augment(const Element& e) { NoChildren(e); }

  CoverageRecorder& cov_;
  bool description_seen_ = false;
};

class ProjectModel {
 public:
  explicit ProjectModel(CoverageRecorder& cov) : cov_(cov) {}

  void Build(const Element& root) {
    if (const std::string* basedir = root.Attribute("basedir"); PF_BRANCH(basedir)) {
      basedir_ = Expand(*basedir);
      if (PF_BRANCH(!basedir_.empty() && basedir_.back() != '/')) basedir_ += '/';
    }
    for (const Element& child : root.children) {
      if (child.name == "description") {
        BindDescription(child);
      } else if (child.name == "property") {
        DefineProperty(child, properties_);
      } else if (child.name == "target") {
        AddTarget(child);
      } else if (child.name == "path") {
        AddPath(child);
      } else if (child.name == "augment") {
        Augment(child);
      }
    }
    if (const std::string* def = root.Attribute("default"); PF_BRANCH(def)) {
      if (PF_BRANCH(!targets_.contains(*def))) Reject("default target \"" + *def + "\" does not exist");
      default_target_ = *def;
    }
    for (const auto& [name, target] : targets_) {
      for (const std::string& dep : target.depends) {
        if (PF_BRANCH(dep.empty())) Reject("syntax error in dependency string of \"" + name + "\"");
        if (PF_BRANCH(!targets_.contains(dep))) {
          Reject("target \"" + dep + "\" does not exist, needed by \"" + name + "\"");
        }
      }
    }
  }

  void Run() {
    std::vector<std::string> order;
    std::map<std::string, int> state;
    if (PF_BRANCH(!default_target_.empty())) {
      Plan(default_target_, 0, state, order);
    } else {
      for (const auto& [name, target] : targets_) Plan(name, 0, state, order);
    }
    if (PF_BRANCH(order.size() > 2)) PF_HIT();
    for (const std::string& name : order) Execute(targets_.at(name), properties_, 0);
    Finalize();
  }

 private:
  enum { kUnvisited = 0, kVisiting = 1, kDone = 2 };

  std::string Expand(std::string_view value) const { return Expand(value, properties_); }

  std::string Expand(std::string_view value, const std::map<std::string, std::string>& props) const {
    std::string out;
    size_t pos = 0;
    while (pos < value.size()) {
      const size_t open = value.find("${", pos);
      if (PF_BRANCH(open == std::string_view::npos)) {
        out.append(value.substr(pos));
        break;
      }
      out.append(value.substr(pos, open - pos));
      const size_t close = value.find('}', open + 2);
      if (PF_BRANCH(close == std::string_view::npos)) {
        out.append(value.substr(open));
        break;
      }
      const std::string key(value.substr(open + 2, close - open - 2));
      auto it = props.find(key);
      if (PF_BRANCH(it != props.end())) {
        out += it->second;
      } else {
        out.append(value.substr(open, close - open + 1));
      }
      pos = close + 1;
    }
    return out;
  }

  void BindDescription(const Element& e) {
    if (PF_BRANCH(description_bound_)) {
      // Rebinding leaves the old text registered as the owner.
      description_owner_ = &e;
    } else {
      description_bound_ = true;
      description_owner_ = &e;
      description_ = e.text;
    }
  }

  void DefineProperty(const Element& e, std::map<std::string, std::string>& props) {
    const std::string name = Expand(*e.Attribute("name"), props);
    if (PF_BRANCH(props.contains(name))) return;  // properties are immutable
    std::string value;
    if (const std::string* v = e.Attribute("value"); PF_BRANCH(v)) {
      value = Expand(*v, props);
    } else if (const std::string* loc = e.Attribute("location"); PF_BRANCH(loc)) {
      value = Expand(*loc, props);
      if (PF_BRANCH(value.empty() || value.front() != '/')) value = basedir_ + value;
    } else if (const std::string* ref = e.Attribute("refid"); PF_BRANCH(ref)) {
      auto it = paths_.find(*ref);
      if (PF_BRANCH(it == paths_.end())) Reject("reference " + *ref + " not found");
      value = JoinPath(it->second, 0);
    } else {
      value = Expand(e.text, props);
    }
    props.emplace(name, std::move(value));
  }

  void AddTarget(const Element& e) {
    BuildTarget target;
    target.name = *e.Attribute("name");
    if (PF_BRANCH(target.name.empty())) Reject("target name must not be empty");
    if (PF_BRANCH(targets_.contains(target.name))) Reject("duplicate target \"" + target.name + "\"");
    if (const std::string* deps = e.Attribute("depends"); PF_BRANCH(deps)) {
      target.depends = SplitList(*deps);
      if (PF_BRANCH(target.depends.size() > 1)) PF_HIT();
    }
    target.if_property = e.Attribute("if");
    target.unless_property = e.Attribute("unless");
    for (const Element& task : e.children) target.tasks.push_back({&task});
    if (PF_BRANCH(!e.text.empty() && !IsBlank(e.text))) PF_HIT();
    targets_.emplace(target.name, std::move(target));
  }

  void AddPath(const Element& e) {
    PathModel path;
    if (const std::string* ref = e.Attribute("refid"); PF_BRANCH(ref)) {
      if (PF_BRANCH(!paths_.contains(*ref))) Reject("reference " + *ref + " not found");
      path.refid = *ref;
    }
    if (const std::string* loc = e.Attribute("location"); PF_BRANCH(loc)) {
      path.entries.push_back(Expand(*loc));
    }
    for (const Element& entry : e.children) {
      if (const std::string* loc = entry.Attribute("location"); PF_BRANCH(loc)) {
        path.entries.push_back(Expand(*loc));
      } else {
        for (std::string& part : SplitList(Expand(*entry.Attribute("path")))) {
          if (PF_BRANCH(!part.empty())) path.entries.push_back(std::move(part));
        }
      }
    }
    const std::string* id = e.Attribute("id");
    if (PF_BRANCH(id == nullptr)) return;  // anonymous path
    if (PF_BRANCH(paths_.contains(*id))) Reject("duplicate id \"" + *id + "\"");
    paths_.emplace(*id, std::move(path));
  }

  void Augment(const Element& e) {
    const std::string* id = e.Attribute("id");
    // Missing ids are not checked before the lookup.
    PathModel* target = id == nullptr ? nullptr : Lookup(*id);
    if (PF_BRANCH(id != nullptr && target == nullptr)) Reject("unknown reference \"" + *id + "\"");
    if (target == nullptr) {
      internal::Fault("IllegalStateException", "Unknown reference \"null\"", "ProjectModel::Augment");
    }
    for (const auto& [key, value] : e.attributes) {
      if (PF_BRANCH(key == "id")) continue;
      if (PF_BRANCH(key == "location")) {
        target->entries.push_back(Expand(value));
      } else if (PF_BRANCH(key == "refid")) {
        if (PF_BRANCH(value == *id)) Reject("path \"" + *id + "\" cannot reference itself");
        target->refid = value;
      } else {
        Reject("augment: unsupported attribute \"" + key + "\"");
      }
    }
  }

  PathModel* Lookup(const std::string& id) {
    auto it = paths_.find(id);
    return it == paths_.end() ? nullptr : &it->second;
  }

  std::string JoinPath(const PathModel& path, int depth) const {
    if (PF_BRANCH(depth > 16)) Reject("path reference chain too long");
    std::string out;
    if (PF_BRANCH(!path.refid.empty())) {
      auto it = paths_.find(path.refid);
      if (PF_BRANCH(it == paths_.end())) Reject("reference " + path.refid + " not found");
      out = JoinPath(it->second, depth + 1);
    }
    for (const std::string& entry : path.entries) {
      if (PF_BRANCH(!out.empty())) out += ':';
      out += entry;
    }
    return out;
  }

  void Plan(const std::string& name, int depth, std::map<std::string, int>& state,
            std::vector<std::string>& order) {
    if (depth > kMaxPlanDepth) {
      internal::Fault("StackOverflowError", "dependency recursion too deep", "ProjectModel::Plan");
    }
    int& mark = state[name];
    if (PF_BRANCH(mark == kDone)) return;
    mark = kVisiting;
    if (PF_BRANCH(depth >= 2)) PF_HIT();
    if (PF_BRANCH(depth >= 3)) PF_HIT();
    const BuildTarget& target = targets_.at(name);
    for (const std::string& dep : target.depends) {
      if (PF_BRANCH(state[dep] == kVisiting && dep != name)) {
        Reject("circular dependency: " + name + " <- " + dep);
      }
      Plan(dep, depth + 1, state, order);
    }
    state[name] = kDone;
    order.push_back(name);
  }

  void Execute(const BuildTarget& target, std::map<std::string, std::string>& props,
               int antcall_depth) {
    if (const std::string* cond = target.if_property; PF_BRANCH(cond)) {
      if (PF_BRANCH(!props.contains(Expand(*cond, props)))) return;
    }
    if (const std::string* cond = target.unless_property; PF_BRANCH(cond)) {
      if (PF_BRANCH(props.contains(Expand(*cond, props)))) return;
    }
    ++executed_;
    if (PF_BRANCH(executed_ > 3)) PF_HIT();
    for (const Task& task : target.tasks) {
      const Element& e = *task.element;
      if (PF_BRANCH(e.name == "echo")) {
        const std::string* message = e.Attribute("message");
        const std::string text = Expand(message ? *message : e.text, props);
        if (PF_BRANCH(text.empty())) continue;
        if (PF_BRANCH(text.find("${") != std::string::npos)) PF_HIT();
        log_.push_back(text);
      } else if (PF_BRANCH(e.name == "property")) {
        DefineProperty(e, props);
      } else if (PF_BRANCH(e.name == "mkdir")) {
        std::string dir = Expand(*e.Attribute("dir"), props);
        if (PF_BRANCH(dir.empty() || dir.front() != '/')) dir = basedir_ + dir;
        if (PF_BRANCH(!created_.insert(dir).second)) PF_HIT();
      } else if (e.name == "antcall") {
        Antcall(e, props, antcall_depth);
      }
    }
  }

  void Antcall(const Element& e, const std::map<std::string, std::string>& props, int depth) {
    const std::string name = Expand(*e.Attribute("target"), props);
    auto it = targets_.find(name);
    if (PF_BRANCH(it == targets_.end())) Reject("antcall: target \"" + name + "\" does not exist");
    if (PF_BRANCH(depth >= kMaxAntcallDepth)) Reject("antcall nesting too deep");
    if (PF_BRANCH(depth >= 1)) PF_HIT();
    // The callee sees a copy of the caller's properties; params override.
    std::map<std::string, std::string> scope = props;
    for (const Element& param : e.children) {
      std::string key = Expand(*param.Attribute("name"), props);
      if (PF_BRANCH(scope.contains(key))) PF_HIT();
      scope[key] = Expand(*param.Attribute("value"), props);
    }
    std::map<std::string, int> state;
    std::vector<std::string> order;
    Plan(name, 0, state, order);
    for (const std::string& step : order) Execute(targets_.at(step), scope, depth + 1);
  }

  void Finalize() {
    if (PF_BRANCH(description_bound_)) {
      if (description_owner_ != nullptr && description_owner_->text != description_) {
        internal::Fault("AssertionError", "project description bound twice",
                        "ProjectModel::Finalize");
      }
    }
    if (PF_BRANCH(log_.size() > 2)) PF_HIT();
  }

  CoverageRecorder& cov_;
  std::string basedir_;
  std::string default_target_;
  std::string description_;
  bool description_bound_ = false;
  const Element* description_owner_ = nullptr;
  std::map<std::string, std::string> properties_;
  std::map<std::string, BuildTarget> targets_;
  std::map<std::string, PathModel> paths_;
  std::set<std::string> created_;
  std::vector<std::string> log_;
  int executed_ = 0;
};

}  // namespace

void BuildAndRunProject(const Element& root, CoverageRecorder& cov) {
  Validator(cov).Project(root);
  ProjectModel model(cov);
  model.Build(root);
  model.Run();
}

PointId ModelSiteCount() { return PF_SITE_COUNT(); }

}  // namespace paramfuzz::minixml
