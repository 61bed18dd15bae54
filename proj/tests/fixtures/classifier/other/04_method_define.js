var registry = {};
registry.define("widget", function() {
  return {};
});
