(function() {
  var cache = {};
  define("cache", [], function() {
    return cache;
  });
})();
