/* module.exports = legacy;
   define(["a"], function(a) {});
   import x from "y"; */
var legacy = true;
